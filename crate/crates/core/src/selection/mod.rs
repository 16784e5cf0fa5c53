//! Budgeted seed-corpus selection.
//!
//! Every method produces a [`Ranking`]: lines in pick order, each with the
//! score it had when picked and the running word count in the budget
//! language. Selection stops at the first line whose cumulative count reaches
//! the budget, so the last line may overshoot it.

mod entropy;
mod greedy;
mod matrix;
mod random;
mod ranking;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::aggregation::{LanguagePool, PoolPolicy};
use crate::corpus::{EncodedText, FrequencyTable, LineSpan, ParallelCorpus};
use crate::scoring::{EntConfig, EntVariant, Scorer};
use crate::{Error, Result};

pub use entropy::select_entropy;
pub use greedy::{select_greedy_naive, GreedyOutcome, GreedySelector, Pick};
pub use matrix::{sum_rows, InvertedIndex, ScoreMatrix};
pub use random::{shuffle, ChaChaSampler};
pub use ranking::{RankEntry, Ranking, Split, RANKING_FORMAT};

/// The fourteen method labels accepted by [`Method::from_str`].
pub const METHOD_NAMES: [&str; 14] = [
    "luke", "rand", "s", "sn", "sng2", "sng3", "sng4", "sng5", "entN", "entK", "aggL", "aggF", "aggP", "aggN",
];

/// N-gram order of the aggregated methods unless overridden.
pub const DEFAULT_AGG_ORDER: usize = 2;

/// Full text of one reference language, encoded against its own frequency table.
#[derive(Debug, Clone)]
pub struct ReferenceText {
    pub language: String,
    pub table: FrequencyTable,
    pub text: EncodedText,
}

impl ReferenceText {
    pub fn build(corpus: &ParallelCorpus, language: &str, max_order: usize) -> Result<Self> {
        let lines = corpus.tokenized(language)?;
        let (table, text) = FrequencyTable::build_encoded(language, &lines, max_order)?;
        Ok(ReferenceText {
            language: language.to_string(),
            table,
            text,
        })
    }
}

/// Builds the reference texts of `languages`, deduplicated and sorted by code.
pub fn reference_texts(
    corpus: &ParallelCorpus,
    languages: &[String],
    max_order: usize,
) -> Result<Vec<ReferenceText>> {
    let mut codes = languages.to_vec();
    codes.sort();
    codes.dedup();
    if codes.is_empty() {
        return Err(Error::NoReferenceLanguages);
    }
    codes
        .par_iter()
        .map(|code| ReferenceText::build(corpus, code, max_order))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    /// Consecutive lines from a start line (the Luke excerpt by default).
    Luke,
    Rand,
    Greedy(Scorer),
    Ent(EntVariant),
    Agg {
        policy: PoolPolicy,
        order: usize,
    },
}

impl Method {
    pub fn name(&self) -> String {
        match self {
            Method::Luke => "luke".into(),
            Method::Rand => "rand".into(),
            Method::Greedy(s) => s.name(),
            Method::Ent(v) => v.name().into(),
            Method::Agg { policy, .. } => format!("agg{}", policy.letter()),
        }
    }

    /// Parameters echoed in the ranking header.
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        match self {
            Method::Luke => {}
            Method::Rand => {
                p.insert("rng".into(), "chacha20".into());
            }
            Method::Greedy(s) => {
                p.insert("order".into(), s.order().to_string());
            }
            Method::Ent(v) => {
                let c = EntConfig::new(*v);
                p.insert("chosen_order".into(), c.chosen_order.to_string());
                p.insert("half_order".into(), c.half_order.to_string());
                p.insert("discount".into(), c.discount.to_string());
                p.insert("warm_start".into(), c.warm_start.to_string());
            }
            Method::Agg { policy, order } => {
                p.insert("order".into(), order.to_string());
                p.insert("policy".into(), policy.to_string());
            }
        }
        p
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let method = match s {
            "luke" => Method::Luke,
            "rand" => Method::Rand,
            "s" => Method::Greedy(Scorer::S),
            "sn" => Method::Greedy(Scorer::Sn),
            "entN" => Method::Ent(EntVariant::Nltk),
            "entK" => Method::Ent(EntVariant::KenLm),
            _ => {
                if let Some(j) = s.strip_prefix("sng").and_then(|j| j.parse::<usize>().ok()) {
                    if (2..=5).contains(&j) {
                        return Ok(Method::Greedy(Scorer::Sng(j)));
                    }
                } else if let Some(policy) = s.strip_prefix("agg").and_then(|p| p.parse().ok()) {
                    return Ok(Method::Agg {
                        policy,
                        order: DEFAULT_AGG_ORDER,
                    });
                }
                return Err(Error::UnknownMethod(s.to_string()));
            }
        };
        Ok(method)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Everything a selection run needs besides the corpus.
#[derive(Debug, Clone)]
pub struct SelectionRequest {
    pub method: Method,
    /// Reference languages of the score-based methods. Ignored by `luke` and
    /// `rand`, replaced by the pool members for aggregated methods.
    pub references: Vec<String>,
    pub pool: Option<LanguagePool>,
    pub budget: u64,
    /// Language whose word counts pay the budget; defaults to the first
    /// reference (pool member) in code order.
    pub budget_language: Option<String>,
    pub seed: u64,
    /// First line of the excerpt method; defaults to the first Luke line.
    pub start: Option<String>,
    pub split: Split,
}

impl SelectionRequest {
    pub fn new(method: Method, references: Vec<String>, budget: u64) -> Self {
        SelectionRequest {
            method,
            references,
            pool: None,
            budget,
            budget_language: None,
            seed: 0,
            start: None,
            split: Split::default(),
        }
    }

    fn languages(&self) -> Vec<String> {
        let mut langs = match (&self.method, &self.pool) {
            (Method::Agg { .. }, Some(pool)) => pool.members.clone(),
            _ => self.references.clone(),
        };
        langs.sort();
        langs.dedup();
        langs
    }

    fn budget_language(&self) -> Result<String> {
        match &self.budget_language {
            Some(l) => Ok(l.clone()),
            None => self
                .languages()
                .into_iter()
                .next()
                .ok_or(Error::NoReferenceLanguages),
        }
    }
}

/// Runs any of the fourteen methods.
pub fn select(corpus: &ParallelCorpus, request: &SelectionRequest) -> Result<Ranking> {
    if request.budget == 0 {
        return Err(Error::InvalidBudget);
    }
    let budget_lang = request.budget_language()?;
    let words = corpus.word_counts(&budget_lang)?;
    let languages = request.languages();

    let (outcome, pool) = match request.method {
        Method::Luke => {
            let start = match &request.start {
                Some(id) => corpus
                    .position(id)
                    .ok_or_else(|| Error::UnknownLine(id.clone()))?,
                None => LineSpan::luke().resolve(corpus)?[0],
            };
            (excerpt(&words, start, request.budget), Vec::new())
        }
        Method::Rand => (random::sample(&words, request.budget, request.seed), Vec::new()),
        Method::Greedy(scorer) => {
            let refs = reference_texts(corpus, &languages, scorer.order())?;
            let outcome = GreedySelector::new(&refs, scorer, &words)?.run(request.budget);
            (outcome, languages)
        }
        Method::Agg { order, .. } => {
            for code in &languages {
                if !corpus.has_language(code) {
                    return Err(Error::MissingRow(code.clone()));
                }
            }
            let refs = reference_texts(corpus, &languages, order)?;
            let outcome = GreedySelector::new(&refs, Scorer::Sng(order), &words)?.run(request.budget);
            (outcome, languages)
        }
        Method::Ent(variant) => {
            let reference = languages.first().ok_or(Error::NoReferenceLanguages)?;
            let refs = reference_texts(corpus, std::slice::from_ref(reference), 1)?;
            let outcome = select_entropy(&refs[0], &words, EntConfig::new(variant), request.budget)?;
            (outcome, vec![reference.clone()])
        }
    };

    let mut params = request.method.params();
    if let (Method::Agg { .. }, Some(p)) = (&request.method, &request.pool) {
        if let Some(k) = p.k {
            params.insert("k".into(), k.to_string());
        }
    }
    if request.method == Method::Luke {
        let start = outcome
            .picks
            .first()
            .map_or(String::new(), |p| corpus.line_id(p.line).to_string());
        params.insert("start".into(), start);
    }
    Ok(Ranking::from_outcome(
        corpus,
        &outcome,
        request.method.name(),
        params,
        pool,
        request.budget,
        budget_lang,
        (request.method == Method::Rand).then_some(request.seed),
        request.split,
    ))
}

/// Greedy selection over one or more reference languages, summing their
/// per-language scores. Words are counted in `budget_lang`.
pub fn select_greedy(
    corpus: &ParallelCorpus,
    ref_langs: &[String],
    scorer: Scorer,
    budget: u64,
    budget_lang: &str,
) -> Result<Ranking> {
    let mut request = SelectionRequest::new(Method::Greedy(scorer), ref_langs.to_vec(), budget);
    request.budget_language = Some(budget_lang.to_string());
    select(corpus, &request)
}

/// Uniform sampling without replacement from a seeded ChaCha20 stream.
pub fn select_random(corpus: &ParallelCorpus, budget: u64, seed: u64, budget_lang: &str) -> Result<Ranking> {
    let mut request = SelectionRequest::new(Method::Rand, Vec::new(), budget);
    request.budget_language = Some(budget_lang.to_string());
    request.seed = seed;
    select(corpus, &request)
}

/// Consecutive lines from `start_line` (a line id) until the budget is met.
pub fn select_excerpt(
    corpus: &ParallelCorpus,
    start_line: &str,
    budget: u64,
    budget_lang: &str,
) -> Result<Ranking> {
    let mut request = SelectionRequest::new(Method::Luke, Vec::new(), budget);
    request.budget_language = Some(budget_lang.to_string());
    request.start = Some(start_line.to_string());
    select(corpus, &request)
}

/// Takes candidate lines in the given order until `budget` words are used,
/// skipping lines without words.
pub(crate) fn take_in_order(
    order: impl IntoIterator<Item = usize>,
    words: &[u64],
    budget: u64,
) -> GreedyOutcome {
    let mut picks = Vec::new();
    let mut used = 0u64;
    for line in order {
        if used >= budget {
            break;
        }
        if words[line] == 0 {
            continue;
        }
        used += words[line];
        picks.push(Pick {
            line,
            score: 0.0,
            cumulative_words: used,
        });
    }
    GreedyOutcome {
        exhausted: used < budget,
        picks,
    }
}

fn excerpt(words: &[u64], start: usize, budget: u64) -> GreedyOutcome {
    take_in_order(start..words.len(), words, budget)
}
