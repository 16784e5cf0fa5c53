use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::corpus::ParallelCorpus;
use crate::{Error, Result};

use super::GreedyOutcome;

pub const RANKING_FORMAT: &str = "seedcorpus-ranking/1";

const COLUMNS: &str = "rank\tline_id\tscore\tcum_words";

#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub rank: usize,
    pub line_id: String,
    pub score: f64,
    pub cumulative_words: u64,
}

/// Train/validation percentages of the whole corpus that a seed corpus is
/// later cut into. The ranked lines are the union of both parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub train: f64,
    pub valid: f64,
}

impl Default for Split {
    fn default() -> Self {
        Split {
            train: 3.0,
            valid: 0.2,
        }
    }
}

/// Ordered selection result, written to translators as a TSV file.
///
/// The file starts with `#key<TAB>value` header lines in fixed order, then a
/// column line and one row per pick. Scores are written in shortest
/// round-trip decimal form, so parsing and rewriting is byte-identical.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub method: String,
    pub params: BTreeMap<String, String>,
    pub pool: Vec<String>,
    pub budget: u64,
    pub budget_language: String,
    pub corpus_checksum: String,
    pub seed: Option<u64>,
    pub split: Split,
    /// The corpus ran out of candidates before the budget was met.
    pub exhausted: bool,
    pub entries: Vec<RankEntry>,
}

impl Ranking {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_outcome(
        corpus: &ParallelCorpus,
        outcome: &GreedyOutcome,
        method: String,
        params: BTreeMap<String, String>,
        pool: Vec<String>,
        budget: u64,
        budget_language: String,
        seed: Option<u64>,
        split: Split,
    ) -> Self {
        let entries = outcome
            .picks
            .iter()
            .enumerate()
            .map(|(i, p)| RankEntry {
                rank: i + 1,
                line_id: corpus.line_id(p.line).to_string(),
                score: p.score,
                cumulative_words: p.cumulative_words,
            })
            .collect();
        Ranking {
            method,
            params,
            pool,
            budget,
            budget_language,
            corpus_checksum: corpus.checksum(),
            seed,
            split,
            exhausted: outcome.exhausted,
            entries,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_words(&self) -> u64 {
        self.entries.last().map_or(0, |e| e.cumulative_words)
    }

    pub fn line_ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.line_id.as_str())
    }

    /// Splits the ranked ids into training and validation parts in the
    /// header's proportion; validation lines are taken from the tail.
    pub fn split_ids(&self) -> (Vec<&str>, Vec<&str>) {
        let n = self.entries.len();
        let total = self.split.train + self.split.valid;
        let n_valid = if total > 0.0 {
            ((n as f64 * self.split.valid / total).round() as usize).min(n)
        } else {
            0
        };
        let ids: Vec<&str> = self.line_ids().collect();
        let (train, valid) = ids.split_at(n - n_valid);
        (train.to_vec(), valid.to_vec())
    }

    /// Checks rank contiguity, strictly increasing word counts and the
    /// budget stop rule.
    pub fn check(&self) -> std::result::Result<(), String> {
        let mut prev = 0u64;
        for (i, e) in self.entries.iter().enumerate() {
            if e.rank != i + 1 {
                return Err(format!("rank {} at position {}", e.rank, i + 1));
            }
            if e.cumulative_words <= prev {
                return Err(format!("cumulative words not increasing at rank {}", e.rank));
            }
            if prev >= self.budget {
                return Err(format!("budget already met before rank {}", e.rank));
            }
            prev = e.cumulative_words;
        }
        match (self.exhausted, prev >= self.budget) {
            (false, false) => Err(format!("stopped at {prev} words, budget {}", self.budget)),
            (true, true) => Err("marked exhausted although the budget was met".into()),
            _ => Ok(()),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let params = if self.params.is_empty() {
            "-".to_string()
        } else {
            self.params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(";")
        };
        let pool = if self.pool.is_empty() {
            "-".to_string()
        } else {
            self.pool.join(",")
        };
        let seed = self.seed.map_or("-".to_string(), |s| s.to_string());
        let header: [(&str, String); 10] = [
            ("format", RANKING_FORMAT.to_string()),
            ("method", self.method.clone()),
            ("params", params),
            ("pool", pool),
            ("budget", self.budget.to_string()),
            ("budget_language", self.budget_language.clone()),
            ("corpus_checksum", self.corpus_checksum.clone()),
            ("seed", seed),
            ("split", format!("{}/{}", self.split.train, self.split.valid)),
            ("exhausted", self.exhausted.to_string()),
        ];
        for (k, v) in header {
            let _ = writeln!(out, "#{k}\t{v}");
        }
        out.push_str(COLUMNS);
        out.push('\n');
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                e.rank, e.line_id, e.score, e.cumulative_words
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let err = |line: usize, message: &str| Error::RankingFormat {
            line,
            message: message.to_string(),
        };
        let mut header = BTreeMap::new();
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut columns_seen = false;
        for (n, line) in lines.by_ref() {
            if let Some(rest) = line.strip_prefix('#') {
                let (k, v) = rest
                    .split_once('\t')
                    .ok_or_else(|| err(n, "header without tab"))?;
                header.insert(k.to_string(), v.to_string());
            } else if line == COLUMNS {
                columns_seen = true;
                break;
            } else {
                return Err(err(n, "expected header or column line"));
            }
        }
        if !columns_seen {
            return Err(err(0, "missing column line"));
        }
        let get = |k: &str| {
            header
                .get(k)
                .cloned()
                .ok_or_else(|| err(0, &format!("missing #{k}")))
        };
        if get("format")? != RANKING_FORMAT {
            return Err(err(1, "unsupported format"));
        }
        let params = match get("params")?.as_str() {
            "-" => BTreeMap::new(),
            p => p
                .split(';')
                .map(|kv| {
                    kv.split_once('=')
                        .map(|(k, v)| (k.to_string(), v.to_string()))
                        .ok_or_else(|| err(0, "bad params"))
                })
                .collect::<Result<_>>()?,
        };
        let pool = match get("pool")?.as_str() {
            "-" => Vec::new(),
            p => p.split(',').map(str::to_string).collect(),
        };
        let seed = match get("seed")?.as_str() {
            "-" => None,
            s => Some(s.parse().map_err(|_| err(0, "bad seed"))?),
        };
        let split = get("split")?;
        let (train, valid) = split.split_once('/').ok_or_else(|| err(0, "bad split"))?;
        let split = Split {
            train: train.parse().map_err(|_| err(0, "bad split"))?,
            valid: valid.parse().map_err(|_| err(0, "bad split"))?,
        };

        let mut entries = Vec::new();
        for (n, line) in lines {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 4 {
                return Err(err(n, "expected 4 fields"));
            }
            entries.push(RankEntry {
                rank: fields[0].parse().map_err(|_| err(n, "bad rank"))?,
                line_id: fields[1].to_string(),
                score: fields[2].parse().map_err(|_| err(n, "bad score"))?,
                cumulative_words: fields[3].parse().map_err(|_| err(n, "bad word count"))?,
            });
        }
        Ok(Ranking {
            method: get("method")?,
            params,
            pool,
            budget: get("budget")?.parse().map_err(|_| err(0, "bad budget"))?,
            budget_language: get("budget_language")?,
            corpus_checksum: get("corpus_checksum")?,
            seed,
            split,
            exhausted: get("exhausted")?
                .parse()
                .map_err(|_| err(0, "bad exhausted flag"))?,
            entries,
        })
    }
}
