use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use seedcorpus::aggregation::{build_pool, PoolPolicy};
use seedcorpus::corpus::{word_budget, LanguageMetadata, LineSpan, ParallelCorpus};
use seedcorpus::evaluation::{bleu, combine_streams, corpus_chrf, intersection_test_set, BleuSmoothing};
use seedcorpus::schedules::{emit_manifest, enumerate_schedules, schedule, ExperimentConfig};
use seedcorpus::selection::{select, Method, Ranking, SelectionRequest, Split};
use seedcorpus::Error;

type CliResult<T = ()> = Result<T, Box<dyn std::error::Error>>;

/// Seed-corpus selection, evaluation and training-schedule planning.
#[derive(Parser)]
#[command(name = "seedcorpus", version)]
struct Cli {
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print languages, line count, checksum and word counts of a corpus.
    Inspect {
        #[arg(long)]
        corpus: PathBuf,
        /// Also count words over this span (`luke`, `prefix:P`, `A..B`, `all`).
        #[arg(long)]
        span: Option<String>,
    },
    /// Rank lines with one of the fourteen methods.
    Select(SelectArgs),
    /// Rank lines by scores summed over a language pool.
    Aggregate {
        /// Pool policy: L, F, P or N.
        #[arg(long)]
        policy: String,
        #[command(flatten)]
        select: SelectArgs,
    },
    /// Score hypotheses against references.
    Evaluate {
        /// Hypothesis file; repeat with --combine to merge several systems.
        #[arg(long = "hyp", required = true)]
        hyps: Vec<PathBuf>,
        #[arg(long = "ref")]
        reference: PathBuf,
        /// Only `centeredness` is supported.
        #[arg(long)]
        combine: Option<String>,
        #[arg(long)]
        bleu: bool,
        /// Disable BLEU smoothing.
        #[arg(long)]
        no_smoothing: bool,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 2.0)]
        beta: f64,
        /// Write the combined hypothesis stream here.
        #[arg(long)]
        combined_output: Option<PathBuf>,
    },
    /// List or emit training schedules.
    Schedule {
        #[command(subcommand)]
        action: ScheduleAction,
    },
    /// Build the shared test set left after removing every seed corpus.
    Testset {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long = "ranking")]
        rankings: Vec<PathBuf>,
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum ScheduleAction {
    List,
    Emit {
        label: String,
        #[arg(long)]
        target: String,
        /// Ranking file referenced by the stages that use target data.
        #[arg(long)]
        ranking: Option<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SelectArgs {
    #[arg(long)]
    corpus: PathBuf,
    /// luke, rand, s, sn, sng2..sng5, entN, entK, aggL, aggF, aggP, aggN (or `sng` with --order).
    #[arg(long, default_value = "sn")]
    method: String,
    /// N-gram order for `sng` and the aggregated methods.
    #[arg(long)]
    order: Option<usize>,
    #[arg(long = "ref-lang")]
    ref_langs: Vec<String>,
    /// Budget in words.
    #[arg(long, conflicts_with = "budget_span")]
    budget: Option<u64>,
    /// Budget as the word count of a span, e.g. `luke`.
    #[arg(long)]
    budget_span: Option<String>,
    #[arg(long)]
    budget_lang: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// First line id of the excerpt method.
    #[arg(long)]
    start: Option<String>,
    /// Language metadata CSV, needed by the F, P and N pools.
    #[arg(long)]
    metadata: Option<PathBuf>,
    /// Target language, excluded from pools.
    #[arg(long)]
    target: Option<String>,
    /// Pool size for the F and P pools.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, short)]
    output: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(e.as_ref()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e.downcast_ref::<Error>(), Some(Error::UnknownMethod(_))) {
                eprintln!("{}", Cli::command().render_usage());
            }
            ExitCode::FAILURE
        }
    }
}

fn is_broken_pipe(e: &(dyn std::error::Error + 'static)) -> bool {
    e.downcast_ref::<std::io::Error>()
        .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Inspect { corpus, span } => inspect(&corpus, span.as_deref()),
        Command::Select(args) => {
            let method = parse_method(&args.method, args.order)?;
            run_select(method, &args)
        }
        Command::Aggregate { policy, select } => {
            let policy: PoolPolicy = policy.parse()?;
            let order = select.order.unwrap_or(seedcorpus::selection::DEFAULT_AGG_ORDER);
            run_select(Method::Agg { policy, order }, &select)
        }
        Command::Evaluate {
            hyps,
            reference,
            combine,
            bleu: with_bleu,
            no_smoothing,
            max_n,
            beta,
            combined_output,
        } => {
            let reference = read_lines(&reference)?;
            let streams = hyps
                .iter()
                .map(|p| read_lines(p))
                .collect::<CliResult<Vec<_>>>()?;
            let hypotheses = match combine.as_deref() {
                Some("centeredness") => combine_streams(&streams)?,
                Some(other) => return Err(format!("unknown combine method `{other}`").into()),
                None if streams.len() == 1 => streams.into_iter().next().unwrap_or_default(),
                None => return Err("several --hyp files need --combine centeredness".into()),
            };
            if let Some(path) = combined_output {
                let mut text = hypotheses.join("\n");
                text.push('\n');
                write_atomic(&path, text.as_bytes())?;
            }
            println!("{}", corpus_chrf(&hypotheses, &reference, max_n, beta)?);
            if with_bleu {
                let smoothing = if no_smoothing {
                    BleuSmoothing::None
                } else {
                    BleuSmoothing::default()
                };
                println!("{}", bleu(&hypotheses, &reference, smoothing)?);
            }
            Ok(())
        }
        Command::Schedule { action } => match action {
            ScheduleAction::List => {
                let mut out = std::io::stdout().lock();
                for s in enumerate_schedules() {
                    let stages: Vec<&str> = s.stages.iter().map(|st| st.notation()).collect();
                    writeln!(out, "{}\t{}", s.label, stages.join(" "))?;
                }
                Ok(())
            }
            ScheduleAction::Emit {
                label,
                target,
                ranking,
                output,
            } => {
                let s = schedule(&label)?;
                let mut config = ExperimentConfig::for_target(&target)?;
                config.ranking = ranking;
                let text = emit_manifest(&s, &config)?.to_toml();
                match output {
                    Some(path) => write_atomic(&path, text.as_bytes()),
                    None => Ok(std::io::stdout().lock().write_all(text.as_bytes())?),
                }
            }
        },
        Command::Testset {
            corpus,
            rankings,
            output,
        } => {
            let corpus = ParallelCorpus::load(&corpus)?;
            let rankings = rankings
                .iter()
                .map(|p| Ok(Ranking::parse(&read_text(p)?)?))
                .collect::<CliResult<Vec<_>>>()?;
            let spec = intersection_test_set(&corpus, &rankings)?;
            write_atomic(&output, spec.to_text().as_bytes())?;
            println!("test lines: {}", spec.included.len());
            Ok(())
        }
    }
}

fn parse_method(name: &str, order: Option<usize>) -> CliResult<Method> {
    let mut method: Method = match (name, order) {
        ("sng", Some(j)) => format!("sng{j}").parse()?,
        _ => name.parse()?,
    };
    if let (Method::Agg { order: o, .. }, Some(j)) = (&mut method, order) {
        *o = j;
    }
    Ok(method)
}

fn inspect(path: &Path, span: Option<&str>) -> CliResult {
    let corpus = ParallelCorpus::load(path)?;
    println!("lines\t{}", corpus.len());
    println!("checksum\t{}", corpus.checksum());
    let positions = span
        .map(|s| s.parse::<LineSpan>()?.resolve(&corpus))
        .transpose()?;
    for lang in corpus.languages() {
        let words: u64 = corpus.word_counts(lang)?.iter().sum();
        match &positions {
            Some(p) => println!("{lang}\t{words}\t{}", word_budget(&corpus, lang, p)?),
            None => println!("{lang}\t{words}"),
        }
    }
    Ok(())
}

fn run_select(method: Method, args: &SelectArgs) -> CliResult {
    let corpus = ParallelCorpus::load(&args.corpus)?;
    let mut request = SelectionRequest::new(method, args.ref_langs.clone(), 0);
    request.seed = args.seed;
    request.start = args.start.clone();
    request.split = Split::default();

    if let Method::Agg { policy, .. } = method {
        let target = args.target.clone().ok_or("aggregated methods need --target")?;
        let metadata = match &args.metadata {
            Some(p) => LanguageMetadata::load(p)?,
            None if policy == PoolPolicy::PerLanguage => {
                let pool = corpus
                    .languages()
                    .iter()
                    .filter(|c| **c != target)
                    .cloned()
                    .collect();
                request.pool = Some(seedcorpus::aggregation::LanguagePool {
                    policy,
                    members: pool,
                    k: None,
                });
                LanguageMetadata::default()
            }
            None => return Err("this pool policy needs --metadata".into()),
        };
        if request.pool.is_none() {
            request.pool = Some(build_pool(&metadata, policy, &target, args.k)?);
        }
    }

    let budget_lang = match &args.budget_lang {
        Some(l) => l.clone(),
        None => match &request.pool {
            Some(pool) => pool.members.first().cloned(),
            None => {
                let mut refs = args.ref_langs.clone();
                refs.sort();
                refs.into_iter().next()
            }
        }
        .ok_or("no budget language: pass --budget-lang or --ref-lang")?,
    };
    request.budget_language = Some(budget_lang.clone());
    request.budget = match (args.budget, &args.budget_span) {
        (Some(b), _) => b,
        (None, Some(span)) => {
            let positions = span.parse::<LineSpan>()?.resolve(&corpus)?;
            word_budget(&corpus, &budget_lang, &positions)?
        }
        (None, None) => return Err("pass --budget or --budget-span".into()),
    };

    let ranking = select(&corpus, &request)?;
    write_atomic(&args.output, ranking.to_tsv().as_bytes())?;
    println!(
        "method={} lines={} words={} budget={} budget_language={}{}",
        ranking.method,
        ranking.len(),
        ranking.total_words(),
        ranking.budget,
        ranking.budget_language,
        if ranking.exhausted { " exhausted" } else { "" }
    );
    if ranking.exhausted {
        eprintln!("warning: corpus exhausted before the budget was met");
    }
    Ok(())
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn read_lines(path: &Path) -> CliResult<Vec<String>> {
    Ok(read_text(path)?.lines().map(str::to_string).collect())
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
