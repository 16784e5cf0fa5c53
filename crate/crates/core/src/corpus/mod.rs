//! Parallel corpus ingestion and the per-language text statistics built on it.

mod entities;
mod frequency;
mod metadata;
mod tokenize;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::{Error, Result};

pub use entities::{unmask_named_entities, EntityMap, NeLexicon};
pub use frequency::{EncodedText, FrequencyTable, LineGrams, NgramId, TokenId, Vocabulary, MAX_ORDER};
pub use metadata::{builtin_targets, Language, LanguageMetadata, TargetPreset};
pub use tokenize::{tokenize, TokenizedLine};

/// Line-aligned text in several languages.
///
/// Lines are addressed by position (`0..len()`); `line_id(i)` gives the
/// external label, which defaults to the 1-based line number when no id file
/// is supplied.
#[derive(Debug, Clone)]
pub struct ParallelCorpus {
    languages: Vec<String>,
    line_ids: Vec<String>,
    texts: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifestFile {
    ids: Option<PathBuf>,
    languages: BTreeMap<String, PathBuf>,
}

impl ParallelCorpus {
    /// Builds a corpus from in-memory texts. Languages are stored sorted by code.
    pub fn new(line_ids: Option<Vec<String>>, texts: Vec<(String, Vec<String>)>) -> Result<Self> {
        let mut texts = texts;
        texts.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in texts.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateLanguage(pair[0].0.clone()));
            }
        }

        let expected = match (&line_ids, texts.first()) {
            (Some(ids), _) => ids.len(),
            (None, Some((_, lines))) => lines.len(),
            (None, None) => 0,
        };
        for (lang, lines) in &texts {
            if lines.len() != expected {
                return Err(Error::AlignmentMismatch {
                    lang: lang.clone(),
                    expected,
                    actual: lines.len(),
                });
            }
        }

        let line_ids = match line_ids {
            Some(ids) => {
                let mut seen = HashSet::with_capacity(ids.len());
                for id in &ids {
                    if !seen.insert(id.as_str()) {
                        return Err(Error::DuplicateLineId(id.clone()));
                    }
                }
                ids
            }
            None => (1..=expected).map(|i| i.to_string()).collect(),
        };

        let (languages, texts) = texts.into_iter().unzip();
        Ok(ParallelCorpus {
            languages,
            line_ids,
            texts,
        })
    }

    /// Loads a corpus from a TOML manifest:
    ///
    /// ```toml
    /// ids = "ids.txt"          # optional, one label per line
    /// [languages]
    /// eng = "eng.txt"
    /// fry = "fry.txt"
    /// ```
    ///
    /// Paths are relative to the manifest's directory.
    pub fn load(manifest_path: impl AsRef<Path>) -> Result<Self> {
        let manifest_path = manifest_path.as_ref();
        let raw = fs::read_to_string(manifest_path).map_err(|e| Error::io(manifest_path, e))?;
        let manifest: ManifestFile = toml::from_str(&raw).map_err(|e| Error::InvalidManifest {
            path: manifest_path.to_path_buf(),
            message: e.message().to_string(),
        })?;
        if manifest.languages.is_empty() {
            return Err(Error::InvalidManifest {
                path: manifest_path.to_path_buf(),
                message: "no languages listed".into(),
            });
        }
        let base = manifest_path.parent().unwrap_or(Path::new("."));

        let ids = manifest.ids.map(|p| read_lines(&base.join(p))).transpose()?;
        let texts = manifest
            .languages
            .into_iter()
            .map(|(code, path)| Ok((code, read_lines(&base.join(path))?)))
            .collect::<Result<Vec<_>>>()?;
        ParallelCorpus::new(ids, texts)
    }

    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn len(&self) -> usize {
        self.line_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.line_ids.is_empty()
    }

    pub fn line_ids(&self) -> &[String] {
        &self.line_ids
    }

    pub fn line_id(&self, pos: usize) -> &str {
        &self.line_ids[pos]
    }

    pub fn position(&self, line_id: &str) -> Option<usize> {
        self.line_ids.iter().position(|id| id == line_id)
    }

    pub fn has_language(&self, code: &str) -> bool {
        self.language_index(code).is_ok()
    }

    fn language_index(&self, code: &str) -> Result<usize> {
        self.languages
            .binary_search_by(|l| l.as_str().cmp(code))
            .map_err(|_| Error::UnknownLanguage(code.to_string()))
    }

    pub fn lines(&self, lang: &str) -> Result<&[String]> {
        Ok(&self.texts[self.language_index(lang)?])
    }

    pub fn tokenized(&self, lang: &str) -> Result<Vec<TokenizedLine>> {
        Ok(self.lines(lang)?.iter().map(|l| tokenize(l)).collect())
    }

    /// Token count of every line in `lang`.
    pub fn word_counts(&self, lang: &str) -> Result<Vec<u64>> {
        Ok(self
            .lines(lang)?
            .iter()
            .map(|l| tokenize(l).len() as u64)
            .collect())
    }

    /// SHA-256 over line ids and every language's text, hex encoded.
    pub fn checksum(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(b"ids\n");
        for id in &self.line_ids {
            hasher.update(id.as_bytes());
            hasher.update(b"\n");
        }
        for (code, lines) in self.languages.iter().zip(&self.texts) {
            hasher.update(b"lang\t");
            hasher.update(code.as_bytes());
            hasher.update(b"\n");
            for line in lines {
                hasher.update(line.as_bytes());
                hasher.update(b"\n");
            }
        }
        hex::encode(hasher.finalize())
    }
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    let raw = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines: Vec<String> = raw
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l).to_string())
        .collect();
    if raw.ends_with('\n') || raw.is_empty() {
        lines.pop();
    }
    Ok(lines)
}

/// A set of corpus lines named by label, used for word budgets and excerpts.
///
/// Textual forms: `luke` (the book of Luke in 8-digit `BBCCCVVV` verse ids),
/// `prefix:<p>`, `<first>..<last>` (inclusive label range) and `all`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineSpan {
    All,
    Prefix(String),
    Range { first: String, last: String },
}

impl LineSpan {
    pub fn luke() -> Self {
        LineSpan::Prefix("42".into())
    }

    /// Positions covered by the span, in corpus order.
    pub fn resolve(&self, corpus: &ParallelCorpus) -> Result<Vec<usize>> {
        let positions: Vec<usize> = match self {
            LineSpan::All => (0..corpus.len()).collect(),
            LineSpan::Prefix(p) => corpus
                .line_ids()
                .iter()
                .enumerate()
                .filter(|(_, id)| id.starts_with(p.as_str()))
                .map(|(i, _)| i)
                .collect(),
            LineSpan::Range { first, last } => {
                let a = corpus
                    .position(first)
                    .ok_or_else(|| Error::UnknownLine(first.clone()))?;
                let b = corpus
                    .position(last)
                    .ok_or_else(|| Error::UnknownLine(last.clone()))?;
                (a..=b).collect()
            }
        };
        if positions.is_empty() {
            return Err(Error::EmptySpan(self.to_string()));
        }
        Ok(positions)
    }
}

impl FromStr for LineSpan {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => return Ok(LineSpan::All),
            "luke" | "Luke" | "LUK" => return Ok(LineSpan::luke()),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("prefix:") {
            if !p.is_empty() {
                return Ok(LineSpan::Prefix(p.to_string()));
            }
        } else if let Some((a, b)) = s.split_once("..") {
            if !a.is_empty() && !b.is_empty() {
                return Ok(LineSpan::Range {
                    first: a.to_string(),
                    last: b.to_string(),
                });
            }
        }
        Err(Error::InvalidSpan(s.to_string()))
    }
}

impl fmt::Display for LineSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LineSpan::All => f.write_str("all"),
            LineSpan::Prefix(p) => write!(f, "prefix:{p}"),
            LineSpan::Range { first, last } => write!(f, "{first}..{last}"),
        }
    }
}

/// Number of words (tokens) of `lang` over the given line positions.
pub fn word_budget(corpus: &ParallelCorpus, lang: &str, positions: &[usize]) -> Result<u64> {
    let lines = corpus.lines(lang)?;
    positions.iter().try_fold(0u64, |acc, &p| {
        let line = lines.get(p).ok_or_else(|| Error::UnknownLine(p.to_string()))?;
        Ok(acc + tokenize(line).len() as u64)
    })
}
