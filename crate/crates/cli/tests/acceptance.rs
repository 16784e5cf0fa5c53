//! Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//!
//! Run with `cargo test -p seedcorpus-cli --test acceptance`.
//! Set `SEEDCORPUS_BIBLE` to a manifest of the full Bible corpus to enable the
//! full-scale budget checks of criterion 8.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use seedcorpus::aggregation::{build_pool, LanguagePool, PoolPolicy};
use seedcorpus::corpus::{tokenize, word_budget, FrequencyTable, LanguageMetadata, LineSpan, ParallelCorpus};
use seedcorpus::evaluation::{centeredness_combine, chrf, intersection_test_set};
use seedcorpus::schedules::{
    emit_manifest, enumerate_schedules, parse_manifest, schedule, validate_schedule, ExperimentConfig, Stage,
};
use seedcorpus::scoring::{
    score_ent, score_s, score_sn, score_sng, train_lm, Coverage, EntPartition, Scorer, Smoothing,
};
use seedcorpus::selection::{
    reference_texts, select, select_excerpt, select_greedy_naive, ChaChaSampler, GreedySelector, Method,
    RankEntry, Ranking, SelectionRequest, Split, METHOD_NAMES,
};

use common::{
    brute_chrf, fixture_dir, oracle_greedy, random_corpus, toy_corpus, OracleLanguage, OracleScore,
};

enum Verdict {
    Pass(String),
    Skip(String),
}

type Outcome = Result<Verdict, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SCORERS: [Scorer; 6] = [
    Scorer::S,
    Scorer::Sn,
    Scorer::Sng(2),
    Scorer::Sng(3),
    Scorer::Sng(4),
    Scorer::Sng(5),
];

fn oracle_kind(s: Scorer) -> OracleScore {
    match s {
        Scorer::S => OracleScore::S,
        Scorer::Sn => OracleScore::Sn,
        Scorer::Sng(j) => OracleScore::Sng(j),
    }
}

fn c1_memo_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut runs, mut oracle_runs) = (0, 0);
    let mut rng = ChaChaSampler::new(2024);
    for seed in 0..200u64 {
        let n_lines = 20 + rng.below(481) as usize;
        let n_langs = 1 + rng.below(5) as usize;
        let vocab = 20 + rng.below(400) as usize;
        let corpus = random_corpus(seed, n_lines, n_langs, vocab, 16);
        let langs = corpus.languages().to_vec();
        let words = corpus.word_counts(&langs[0]).unwrap();
        let total: u64 = words.iter().sum();
        let budget = 1 + rng.below(total.max(1) / 3 + 1);
        for scorer in SCORERS {
            let pools: Vec<&[String]> = if langs.len() > 1 {
                vec![&langs[..1], &langs]
            } else {
                vec![&langs[..]]
            };
            for pool in pools {
                let refs = reference_texts(&corpus, pool, scorer.order()).unwrap();
                let memo = GreedySelector::new(&refs, scorer, &words).unwrap().run(budget);
                let naive = select_greedy_naive(&refs, scorer, &words, budget).unwrap();
                ensure!(
                    memo == naive,
                    "corpus {seed}, {scorer:?} over {pool:?}: memoized run differs"
                );
                runs += 1;
                if n_lines <= 150 {
                    let mut oracle: Vec<OracleLanguage> = pool
                        .iter()
                        .map(|l| OracleLanguage::new(corpus.lines(l).unwrap(), scorer.order()))
                        .collect();
                    let (expected, exhausted) =
                        oracle_greedy(&mut oracle, oracle_kind(scorer), &words, budget);
                    let got: Vec<_> = memo
                        .picks
                        .iter()
                        .map(|p| (p.line, p.score, p.cumulative_words))
                        .collect();
                    ensure!(
                        got == expected && memo.exhausted == exhausted,
                        "corpus {seed}: string oracle differs"
                    );
                    oracle_runs += 1;
                }
            }
        }
        if langs.len() > 1 {
            let mut req = SelectionRequest::new(
                Method::Agg {
                    policy: PoolPolicy::PerLanguage,
                    order: 2,
                },
                Vec::new(),
                budget,
            );
            req.pool = Some(LanguagePool {
                policy: PoolPolicy::PerLanguage,
                members: langs.clone(),
                k: None,
            });
            req.budget_language = Some(langs[0].clone());
            let ranking = select(&corpus, &req).unwrap();
            let refs = reference_texts(&corpus, &langs, 2).unwrap();
            let naive = select_greedy_naive(&refs, Scorer::Sng(2), &words, budget).unwrap();
            let ids: Vec<&str> = naive.picks.iter().map(|p| corpus.line_id(p.line)).collect();
            ensure!(
                ranking.line_ids().eq(ids.iter().copied()),
                "corpus {seed}: aggL ranking differs"
            );
            runs += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure!(
        elapsed < Duration::from_secs(300),
        "took {elapsed:?}, budget 5 min"
    );
    Ok(Verdict::Pass(format!(
        "{runs} runs exact on 200 corpora ({oracle_runs} also against string oracle) in {:.1}s",
        elapsed.as_secs_f64()
    )))
}

fn c2_speedup() -> Outcome {
    let corpus = random_corpus(7, 20_000, 10, 8_000, 24);
    let langs = corpus.languages().to_vec();
    let words = corpus.word_counts(&langs[0]).unwrap();
    let refs = reference_texts(&corpus, &langs, 4).unwrap();
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());

    let timed_memo = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let t = Instant::now();
            let mut sel = GreedySelector::new(&refs, Scorer::Sng(4), &words).unwrap();
            let out = sel.run_until(u64::MAX, 1000);
            (t.elapsed(), out)
        })
    };
    let (memo_1, out_1) = timed_memo(1);
    let (memo_n, out_n) = timed_memo(cores);
    ensure!(out_1.picks.len() == 1000, "only {} picks", out_1.picks.len());
    let budget = out_1.picks.last().unwrap().cumulative_words;

    let t = Instant::now();
    let naive = select_greedy_naive(&refs, Scorer::Sng(4), &words, budget).unwrap();
    let naive_time = t.elapsed();

    ensure!(naive.picks == out_1.picks, "naive and memoized picks differ");
    ensure!(out_n == out_1, "output depends on worker count");
    let (s1, sn) = (
        naive_time.as_secs_f64() / memo_1.as_secs_f64(),
        naive_time.as_secs_f64() / memo_n.as_secs_f64(),
    );
    ensure!(s1 >= 5.0, "single-worker speedup {s1:.1}x < 5x");
    ensure!(sn >= 10.0, "speedup with {cores} workers {sn:.1}x < 10x");
    Ok(Verdict::Pass(format!(
        "naive {:.2}s, memo {:.2}s ({s1:.1}x) with 1 worker, {:.2}s ({sn:.1}x) with {cores}; identical picks",
        naive_time.as_secs_f64(),
        memo_1.as_secs_f64(),
        memo_n.as_secs_f64()
    )))
}

fn encoded(lines: &[&str], order: usize) -> (FrequencyTable, seedcorpus::corpus::EncodedText) {
    let toks: Vec<_> = lines.iter().map(|l| tokenize(l)).collect();
    FrequencyTable::build_encoded("x", &toks, order).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12
}

fn c3_score_functions() -> Outcome {
    let (t, text) = encoded(&["a b", "a"], 1);
    let mut cov = Coverage::new(&t);
    let line = text.line(0);
    ensure!(close(score_s(&line, &t, &cov), 3.0), "S(a b)");
    ensure!(close(score_sn(&line, &t, &cov), 1.5), "SN(a b)");
    cov.cover(&line);
    ensure!(score_sn(&line, &t, &cov) == 0.0, "SN after cover");

    let (t, text) = encoded(&["a b a", ""], 2);
    let mut cov = Coverage::new(&t);
    let line = text.line(0);
    ensure!(
        close(score_sng(&line, &t, &cov, 2).unwrap(), 7.0 / 3.0),
        "SNG2(a b a)"
    );
    ensure!(
        score_sng(&text.line(1), &t, &cov, 2).unwrap() == 0.0,
        "SNG of empty line"
    );
    cov.cover(&line);
    ensure!(score_sng(&line, &t, &cov, 2).unwrap() == 0.0, "SNG after cover");

    let lm = train_lm([[0u32, 0, 1].as_slice()], 1, Smoothing::Mle).unwrap();
    ensure!(
        close(lm.prob(&[], 0), 2.0 / 3.0) && close(lm.prob(&[], 1), 1.0 / 3.0),
        "MLE unigram"
    );
    let h = -(2.0 * (2.0f64 / 3.0).log2() + (1.0f64 / 3.0).log2()) / 3.0;
    ensure!(close(lm.cross_entropy(&[0, 0, 1]), h), "H of training line");
    let uniform = train_lm([(0u32..16).collect::<Vec<_>>().as_slice()], 1, Smoothing::Mle).unwrap();
    ensure!(
        close(uniform.cross_entropy(&[3, 9, 9, 15]), 4.0),
        "uniform H = log2 V"
    );

    // H_c = 4 (uniform over 16), H_r = 1.5 (P = 1/2, 1/4 on "0 1"): ENT = 2.5.
    let lm_r = train_lm([[0u32, 0, 1, 2].as_slice()], 1, Smoothing::Mle).unwrap();
    let part = EntPartition::split(3, &[0]);
    let ent = score_ent(1, &[0, 1], &part, &uniform, &uniform, &lm_r).unwrap();
    ensure!(close(ent, 2.5), "ENT left-half line: {ent}");
    ensure!(
        score_ent(1, &[0, 1], &part, &lm_r, &uniform, &lm_r).unwrap() == 0.0,
        "ENT cancellation"
    );

    let corpus = random_corpus(31, 10_000, 1, 3_000, 30);
    let toks = corpus.tokenized("l0").unwrap();
    let (t, text) = FrequencyTable::build_encoded("l0", &toks, 1).unwrap();
    let mut cov = Coverage::new(&t);
    for (i, line) in text.lines().enumerate() {
        ensure!(
            score_sng(&line, &t, &cov, 1).unwrap() == score_sn(&line, &t, &cov),
            "SNG1 != SN at line {i}"
        );
        if i % 3 == 0 {
            cov.cover(&line);
        }
    }
    Ok(Verdict::Pass(
        "S, SN, SNG, H, ENT hand values to 1e-12; SNG1 = SN on 10000 lines".into(),
    ))
}

fn c4_monotone_decay() -> Outcome {
    let mut rng = ChaChaSampler::new(4);
    let mut checks = 0;
    for pair in 0..1000u64 {
        let corpus = random_corpus(pair, 40, 1, 30, 10);
        let toks = corpus.tokenized("l0").unwrap();
        let (t, text) = FrequencyTable::build_encoded("l0", &toks, 5).unwrap();
        let line = text.line(rng.below(40) as usize);
        let mut cov = Coverage::new(&t);
        let mut prev: Vec<f64> = SCORERS.iter().map(|s| s.score(&line, &t, &cov)).collect();
        for _ in 0..1 + rng.below(20) {
            cov.cover(&text.line(rng.below(40) as usize));
            for (s, last) in SCORERS.iter().zip(prev.iter_mut()) {
                let now = s.score(&line, &t, &cov);
                ensure!(now <= *last, "pair {pair}: {s:?} rose from {last} to {now}");
                *last = now;
                checks += 1;
            }
        }
    }
    Ok(Verdict::Pass(format!(
        "1000 (line, prefix) pairs, {checks} comparisons"
    )))
}

const CHRF_GOLDENS: [(&str, &str, usize, f64, f64); 10] = [
    ("cat sat", "cat sitting", 3, 2.0, 39.592522579290),
    ("cat sat", "cat sitting", 6, 2.0, 22.502377464210),
    (
        "the cat sat on the mat",
        "the cat is on the mat",
        6,
        2.0,
        64.577942062529,
    ),
    (
        "dat it dy goed gean mei",
        "dat it dy goed gean mei en dû lang libbest",
        6,
        2.0,
        56.211014016109,
    ),
    (
        "En Saul boude de Heare in alter",
        "En Saul boude de Heare in alter ;",
        6,
        2.0,
        96.548064444976,
    ),
    ("abc", "xyz", 6, 2.0, 0.0),
    ("a", "ab", 6, 2.0, 55.555555555556),
    (
        "Wiswier , wiswier siz ik jimme",
        "wiswier wiswier ik siz jimme",
        4,
        1.0,
        67.527953395171,
    ),
    ("ëèê ůú", "ëê ůúű", 6, 3.0, 32.666666666667),
    (
        "God tocht ek oan Rachel",
        "God tocht oan Rachel en God",
        6,
        0.5,
        69.711012907458,
    ),
];

fn c5_chrf() -> Outcome {
    for (h, r, n, beta, expected) in CHRF_GOLDENS {
        let got = chrf(h, r, n, beta).value;
        let brute = brute_chrf(h, r, n, beta);
        ensure!((got - brute).abs() < 1e-6, "{h:?}: {got} vs brute force {brute}");
        ensure!(
            (got - expected).abs() < 1e-6,
            "{h:?}: {got} vs reference value {expected}"
        );
    }
    let c = toy_corpus();
    let mut lines = 0;
    for lang in c.languages() {
        for line in c.lines(lang).unwrap().iter().filter(|l| !l.trim().is_empty()) {
            ensure!(chrf(line, line, 6, 2.0).value == 100.0, "chrf(x, x) on {line:?}");
            ensure!(
                chrf("", line, 6, 2.0).value == 0.0,
                "empty hypothesis on {line:?}"
            );
            lines += 1;
        }
    }
    Ok(Verdict::Pass(format!(
        "10 goldens to 1e-6; identity and empty on {lines} fixture lines"
    )))
}

const POOL: [&str; 20] = [
    "en hy sei tsjin harren",
    "en hy sei tsjin hem",
    "hy sei tsjin harren",
    "and he said unto them",
    "and he said to them",
    "he said unto them",
    "und er sprach zu ihnen",
    "en hij zeide tot hen",
    "en hij zei tegen hen",
    "wiswier ik siz jimme",
    "verily I say unto you",
    "voorwaar ik zeg u",
    "God tocht oan Rachel",
    "God remembered Rachel",
    "",
    "a",
    "the the the the",
    "Saul boude in alter",
    "Saul built an altar",
    "ëèê ůú",
];

fn c6_centeredness() -> Outcome {
    let sim: Vec<Vec<f64>> = POOL
        .iter()
        .map(|a| POOL.iter().map(|b| chrf(a, b, 6, 2.0).value).collect())
        .collect();
    let mut lists = 0;
    let mut failure = None;
    let mut visit = |idx: &[usize]| {
        let cands: Vec<&str> = idx.iter().map(|&i| POOL[i]).collect();
        let (best, _) = centeredness_combine(&cands).unwrap();
        let sum = |a: usize| -> f64 {
            (0..idx.len())
                .filter(|&b| b != a)
                .fold(0.0, |acc, b| acc + sim[idx[a]][idx[b]])
        };
        if (0..idx.len()).any(|a| sum(a) > sum(best)) && failure.is_none() {
            failure = Some(format!("{cands:?}"));
        }
        lists += 1;
    };
    fn walk(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            walk(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    for k in 1..=6 {
        walk(POOL.len(), k, 0, &mut Vec::new(), &mut visit);
    }
    if let Some(f) = failure {
        return Err(format!("argmax violated on {f}"));
    }
    let dup = [
        "God remembered Rachel",
        "and he said unto them",
        "God remembered Rachel",
        "voorwaar ik zeg u",
    ];
    let (best, _) = centeredness_combine(&dup).unwrap();
    ensure!(dup[best] == "God remembered Rachel", "duplicate not chosen");
    Ok(Verdict::Pass(format!(
        "{lists} candidate lists exhaustive; duplicate wins"
    )))
}

fn c7_schedules() -> Outcome {
    use Stage::*;
    let all = enumerate_schedules();
    ensure!(all.len() == 24, "{} schedules", all.len());
    for (label, stages) in [
        ('B', vec![P1, P2, P3]),
        ('F', vec![P1, P3]),
        ('I', Stage::ALL.to_vec()),
        ('X', vec![P0]),
    ] {
        ensure!(
            schedule(&label.to_string()).unwrap().stages == stages,
            "schedule {label}"
        );
    }
    ensure!(
        all.iter().filter(|s| s.stages.contains(&P0)).count() == 16,
        "16 with P0"
    );
    let mut manifests = 0;
    for s in &all {
        ensure!(
            validate_schedule(&s.stages).is_ok(),
            "{} fails validation",
            s.label
        );
        for target in ["frisian", "xho"] {
            let mut config = ExperimentConfig::for_target(target).unwrap();
            config.ranking = Some("seed.tsv".into());
            let m = emit_manifest(s, &config).unwrap();
            ensure!(
                parse_manifest(&m.to_toml()).unwrap() == m,
                "{} round trip",
                s.label
            );
            manifests += 1;
        }
    }
    Ok(Verdict::Pass(format!(
        "24 schedules, B/F/I/X spot checks, {manifests} manifests round-trip"
    )))
}

fn c8_budget_protocol() -> Outcome {
    let c = toy_corpus();
    let luke = LineSpan::luke().resolve(&c).unwrap();
    let budget = word_budget(&c, "eng", &luke).unwrap();
    let meta = LanguageMetadata::load(fixture_dir().join("metadata.csv")).unwrap();
    for name in METHOD_NAMES {
        let method: Method = name.parse().unwrap();
        let mut req = SelectionRequest::new(method, vec!["eng".into()], budget);
        req.budget_language = Some("eng".into());
        req.seed = 5;
        if let Method::Agg { policy, .. } = method {
            req.pool = Some(build_pool(&meta, policy, "fry", Some(2)).unwrap());
        }
        let r = select(&c, &req).unwrap();
        r.check().map_err(|e| format!("{name}: {e}"))?;
    }
    let fixture = format!("14 methods on the fixture (budget {budget} words)");
    let Ok(bible) = std::env::var("SEEDCORPUS_BIBLE") else {
        return Ok(Verdict::Skip(format!(
            "{fixture} hold; full-corpus checks need SEEDCORPUS_BIBLE"
        )));
    };
    let corpus = ParallelCorpus::load(&bible).map_err(|e| format!("{bible}: {e}"))?;
    let luke = LineSpan::luke().resolve(&corpus).map_err(|e| e.to_string())?;
    let fry = word_budget(&corpus, "fry", &luke).map_err(|e| e.to_string())?;
    ensure!(fry == 25_695, "Frisian Luke budget {fry} != 25695");
    let excerpt = select_excerpt(&corpus, corpus.line_id(luke[0]), fry, "fry").map_err(|e| e.to_string())?;
    ensure!(
        excerpt.len() == 1151,
        "Luke excerpt has {} lines != 1151",
        excerpt.len()
    );
    Ok(Verdict::Pass(format!(
        "{fixture}; Luke = 1151 lines, Frisian budget = 25695 words"
    )))
}

fn c9_cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let manifest = fixture_dir().join("manifest.toml");
    let meta = fixture_dir().join("metadata.csv");
    let (m, md) = (manifest.to_str().unwrap(), meta.to_str().unwrap());
    let fry = fixture_dir().join("fry.txt");
    let nld = fixture_dir().join("nld.txt");
    let mut commands: Vec<Vec<String>> = Vec::new();
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    for method in METHOD_NAMES {
        let mut args = s(&[
            "select",
            "--corpus",
            m,
            "--method",
            method,
            "--budget-span",
            "luke",
        ]);
        args.extend(s(&[
            "--ref-lang",
            "eng",
            "--target",
            "fry",
            "--metadata",
            md,
            "--k",
            "2",
            "--seed",
            "9",
        ]));
        commands.push(args);
    }
    commands.push(s(&[
        "aggregate",
        "--policy",
        "N",
        "--corpus",
        m,
        "--metadata",
        md,
        "--target",
        "fry",
        "--budget",
        "900",
        "--budget-lang",
        "eng",
    ]));
    commands.push(s(&["inspect", "--corpus", m, "--span", "luke"]));
    commands.push(s(&[
        "evaluate",
        "--hyp",
        fry.to_str().unwrap(),
        "--hyp",
        nld.to_str().unwrap(),
        "--ref",
        nld.to_str().unwrap(),
        "--combine",
        "centeredness",
        "--bleu",
    ]));
    commands.push(s(&["schedule", "list"]));
    commands.push(s(&[
        "schedule",
        "emit",
        "K",
        "--target",
        "frisian",
        "--ranking",
        "seed.tsv",
    ]));

    let run = |args: &[String], out: Option<&Path>, jobs: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_seedcorpus"));
        cmd.args(["--jobs", jobs]).args(args);
        if let Some(o) = out {
            cmd.arg("-o").arg(o);
        }
        let o = cmd.output().unwrap();
        let file = out.map(|p| fs::read(p).unwrap_or_default()).unwrap_or_default();
        (o.status.code(), o.stdout, file)
    };
    for (i, args) in commands.iter().enumerate() {
        let writes = matches!(args[0].as_str(), "select" | "aggregate");
        let outs: Vec<_> = (0..3)
            .map(|k| writes.then(|| dir.path().join(format!("{i}-{k}.tsv"))))
            .collect();
        let a = run(args, outs[0].as_deref(), "1");
        let b = run(args, outs[1].as_deref(), "1");
        let c = run(args, outs[2].as_deref(), "3");
        ensure!(a.0 == Some(0), "{args:?} exited {:?}", a.0);
        ensure!(a == b, "{args:?}: repeated runs differ");
        ensure!(a == c, "{args:?}: output depends on --jobs");
    }
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/sng4_luke_eng.tsv");
    let out = dir.path().join("golden.tsv");
    let args = s(&[
        "select",
        "--corpus",
        m,
        "--method",
        "sng4",
        "--budget-span",
        "luke",
        "--ref-lang",
        "eng",
    ]);
    run(&args, Some(&out), "1");
    ensure!(
        fs::read(&out).unwrap() == fs::read(golden).unwrap(),
        "sng4 ranking differs from committed golden"
    );
    Ok(Verdict::Pass(format!(
        "{} commands byte-identical across runs and --jobs; golden ranking matches",
        commands.len()
    )))
}

fn c10_intersection() -> Outcome {
    let mut rng = ChaChaSampler::new(10);
    for config in 0..1000 {
        let n = 5 + rng.below(200) as usize;
        let corpus = ParallelCorpus::new(None, vec![("x".into(), vec!["w".to_string(); n])]).unwrap();
        let rankings: Vec<Ranking> = (0..1 + rng.below(5))
            .map(|_| {
                let take = rng.below(n as u64 + 1) as usize;
                let order = seedcorpus::selection::shuffle(n, rng.next_u64());
                let split = Split {
                    train: 0.5 + rng.below(50) as f64 / 10.0,
                    valid: rng.below(20) as f64 / 10.0,
                };
                Ranking {
                    method: "rand".into(),
                    params: BTreeMap::new(),
                    pool: Vec::new(),
                    budget: take as u64,
                    budget_language: "x".into(),
                    corpus_checksum: corpus.checksum(),
                    seed: Some(0),
                    split,
                    exhausted: false,
                    entries: order[..take]
                        .iter()
                        .enumerate()
                        .map(|(i, &p)| RankEntry {
                            rank: i + 1,
                            line_id: corpus.line_id(p).to_string(),
                            score: 0.0,
                            cumulative_words: i as u64 + 1,
                        })
                        .collect(),
                }
            })
            .collect();
        let spec = intersection_test_set(&corpus, &rankings).unwrap();
        let included: HashSet<&str> = spec.included.iter().map(String::as_str).collect();
        for r in &rankings {
            let (train, valid) = r.split_ids();
            ensure!(
                train.len() + valid.len() == r.len(),
                "config {config}: split lost ids"
            );
            ensure!(
                train.iter().chain(&valid).all(|id| !included.contains(id)),
                "config {config}: a train/valid id leaked into the test set"
            );
        }
        let removed: HashSet<&str> = rankings.iter().flat_map(|r| r.line_ids()).collect();
        ensure!(
            included.len() + removed.len() == n,
            "config {config}: test set is not the complement"
        );
    }
    Ok(Verdict::Pass("1000 random configurations".into()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("memoization oracle equivalence", c1_memo_equivalence),
        ("relaxed memoization speedup", c2_speedup),
        ("score function unit suite", c3_score_functions),
        ("monotone decay", c4_monotone_decay),
        ("chrF correctness", c5_chrf),
        ("centeredness", c6_centeredness),
        ("schedule planner", c7_schedules),
        ("budget protocol", c8_budget_protocol),
        ("determinism", c9_cli_determinism),
        ("intersection test set", c10_intersection),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let (status, detail) = match outcome {
            Ok(Verdict::Pass(d)) => ("PASS", d),
            Ok(Verdict::Skip(d)) => ("SKIP", d),
            Err(d) => {
                failed.push(i + 1);
                ("FAIL", d)
            }
        };
        // Straight to the handle so the lines survive libtest's output capture.
        let line = format!("{status} {:>2} {name}: {detail}\n", i + 1);
        std::io::stdout().write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
