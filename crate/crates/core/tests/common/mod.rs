//! Independent reference implementations shared by the integration tests.
//!
//! Nothing here goes through the crate's frequency tables, coverage bitsets
//! or score matrix: n-grams are plain `Vec<String>` keys in hash maps.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::path::PathBuf;

use seedcorpus::corpus::{tokenize, ParallelCorpus};
use seedcorpus::selection::ChaChaSampler;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/toy")
}

pub fn toy_corpus() -> ParallelCorpus {
    ParallelCorpus::load(fixture_dir().join("manifest.toml")).unwrap()
}

/// Which n-gram score the oracle evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleScore {
    S,
    Sn,
    Sng(usize),
}

impl OracleScore {
    fn order(self) -> usize {
        match self {
            OracleScore::S | OracleScore::Sn => 1,
            OracleScore::Sng(j) => j,
        }
    }
}

type Gram = Vec<String>;

fn grams(tokens: &[String], n: usize) -> impl Iterator<Item = Gram> + '_ {
    tokens.windows(n).map(|w| w.to_vec())
}

/// String-keyed model of one language: token lists and n-gram frequencies.
pub struct OracleLanguage {
    pub lines: Vec<Vec<String>>,
    pub freq: HashMap<Gram, u64>,
    pub covered: HashSet<Gram>,
    order: usize,
}

impl OracleLanguage {
    pub fn new(raw: &[String], order: usize) -> Self {
        let lines: Vec<Vec<String>> = raw.iter().map(|l| tokenize(l).tokens).collect();
        let mut freq = HashMap::new();
        for line in &lines {
            for n in 1..=order {
                for g in grams(line, n) {
                    *freq.entry(g).or_insert(0u64) += 1;
                }
            }
        }
        OracleLanguage {
            lines,
            freq,
            covered: HashSet::new(),
            order,
        }
    }

    pub fn score(&self, line: usize, kind: OracleScore) -> f64 {
        let tokens = &self.lines[line];
        let mut mass = 0u64;
        for n in 1..=kind.order() {
            for g in grams(tokens, n) {
                if !self.covered.contains(&g) {
                    mass += self.freq[&g];
                }
            }
        }
        match kind {
            OracleScore::S => mass as f64,
            _ if tokens.is_empty() => 0.0,
            _ => mass as f64 / tokens.len() as f64,
        }
    }

    pub fn cover(&mut self, line: usize) {
        for n in 1..=self.order {
            let gs: Vec<Gram> = grams(&self.lines[line], n).collect();
            self.covered.extend(gs);
        }
    }
}

/// Naive greedy: rescore every remaining line in every language each step.
/// `languages` must be in code order. Returns (line, score, cumulative words).
pub fn oracle_greedy(
    languages: &mut [OracleLanguage],
    kind: OracleScore,
    words: &[u64],
    budget: u64,
) -> (Vec<(usize, f64, u64)>, bool) {
    let mut taken = vec![false; words.len()];
    let mut used = 0;
    let mut picks = Vec::new();
    while used < budget {
        let mut best: Option<(usize, f64)> = None;
        for line in 0..words.len() {
            if taken[line] || words[line] == 0 {
                continue;
            }
            let mut total = 0.0;
            for lang in languages.iter() {
                total += lang.score(line, kind);
            }
            if best.is_none_or(|(_, s)| total > s) {
                best = Some((line, total));
            }
        }
        let Some((line, score)) = best else {
            return (picks, true);
        };
        taken[line] = true;
        used += words[line];
        for lang in languages.iter_mut() {
            lang.cover(line);
        }
        picks.push((line, score, used));
    }
    (picks, false)
}

/// Random corpus with Zipf-like word draws. Languages are named `l0`, `l1`, ...
pub fn random_corpus(
    seed: u64,
    n_lines: usize,
    n_langs: usize,
    vocab: usize,
    max_len: usize,
) -> ParallelCorpus {
    let mut rng = ChaChaSampler::new(seed);
    let cumulative: Vec<f64> = (1..=vocab)
        .scan(0.0, |acc, r| {
            *acc += 1.0 / r as f64;
            Some(*acc)
        })
        .collect();
    let total = *cumulative.last().unwrap();
    let draw = |rng: &mut ChaChaSampler| {
        let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * total;
        cumulative.partition_point(|&c| c < u).min(vocab - 1)
    };
    let texts = (0..n_langs)
        .map(|l| {
            let lines = (0..n_lines)
                .map(|_| {
                    let len = rng.below(max_len as u64 + 1) as usize;
                    (0..len)
                        .map(|_| format!("w{l}x{}", draw(&mut rng)))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            (format!("l{l}"), lines)
        })
        .collect();
    ParallelCorpus::new(None, texts).unwrap()
}

/// Character n-gram statistics by direct enumeration, no hashing.
pub fn brute_chrf(hyp: &str, reference: &str, max_n: usize, beta: f64) -> f64 {
    let h: Vec<char> = hyp.chars().filter(|c| !c.is_whitespace()).collect();
    let r: Vec<char> = reference.chars().filter(|c| !c.is_whitespace()).collect();
    let count = |text: &[char], g: &[char]| text.windows(g.len()).filter(|w| *w == g).count();
    let (mut p, mut rc, mut eff) = (0.0, 0.0, 0);
    for n in 1..=max_n {
        let nh = h.len().saturating_sub(n - 1) * usize::from(h.len() >= n);
        let nr = r.len().saturating_sub(n - 1) * usize::from(r.len() >= n);
        if nh == 0 || nr == 0 {
            continue;
        }
        let mut matched = 0;
        let mut seen: Vec<&[char]> = Vec::new();
        for g in h.windows(n) {
            if seen.contains(&g) {
                continue;
            }
            seen.push(g);
            matched += count(&h, g).min(count(&r, g));
        }
        p += matched as f64 / nh as f64;
        rc += matched as f64 / nr as f64;
        eff += 1;
    }
    if eff == 0 {
        return 0.0;
    }
    p /= eff as f64;
    rc /= eff as f64;
    let f = beta * beta;
    if p + rc == 0.0 {
        0.0
    } else {
        100.0 * (1.0 + f) * p * rc / (f * p + rc)
    }
}
