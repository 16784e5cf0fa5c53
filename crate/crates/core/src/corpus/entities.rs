use std::collections::BTreeMap;
use std::path::Path;

use rustc_hash::FxHashMap;

use super::{tokenize, TokenizedLine};
use crate::{Error, Result};

/// Ordinal → original token span, as produced by [`NeLexicon::mask`].
pub type EntityMap = BTreeMap<usize, Vec<String>>;

const MASK_PREFIX: &str = "__NE";

// Entity spans keyed by first token: (span tokens, row), longest span first.
type SpanIndex = FxHashMap<String, Vec<(Vec<String>, usize)>>;

/// Parallel named-entity table: one row per entity, one column per language.
#[derive(Debug, Clone, Default)]
pub struct NeLexicon {
    languages: Vec<String>,
    rows: Vec<Vec<Option<String>>>,
    index: Vec<SpanIndex>,
}

impl NeLexicon {
    /// Builds a lexicon from a header of language codes and parallel rows.
    /// Empty cells mean the entity has no known form in that language.
    pub fn new(languages: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self> {
        let width = languages.len();
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                if row.len() != width {
                    return Err(Error::InvalidLexicon(format!(
                        "row {} has {} columns, expected {width}",
                        i + 1,
                        row.len()
                    )));
                }
                Ok(row
                    .into_iter()
                    .map(|c| {
                        let c = c.trim().to_string();
                        (!c.is_empty()).then_some(c)
                    })
                    .collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;

        let mut index = vec![FxHashMap::<String, Vec<(Vec<String>, usize)>>::default(); width];
        for (r, row) in rows.iter().enumerate() {
            for (l, cell) in row.iter().enumerate() {
                let Some(surface) = cell else { continue };
                let tokens = tokenize(surface).tokens;
                if let Some(first) = tokens.first() {
                    index[l].entry(first.clone()).or_default().push((tokens, r));
                }
            }
        }
        for per_lang in &mut index {
            for spans in per_lang.values_mut() {
                spans.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.1.cmp(&b.1)));
                spans.dedup_by(|a, b| a.0 == b.0);
            }
        }
        Ok(NeLexicon {
            languages,
            rows,
            index,
        })
    }

    /// Single-language lexicon from a list of entity strings.
    pub fn from_entities<S: AsRef<str>>(lang: &str, entities: &[S]) -> Self {
        let rows = entities.iter().map(|e| vec![e.as_ref().to_string()]).collect();
        NeLexicon::new(vec![lang.to_string()], rows).expect("single column rows")
    }

    /// Reads a comma-separated table whose header row lists language codes.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .from_path(path)
            .map_err(|e| csv_error(path, e))?;
        let languages = reader
            .headers()
            .map_err(|e| csv_error(path, e))?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        let rows = reader
            .records()
            .map(|r| {
                r.map(|rec| rec.iter().map(str::to_string).collect())
                    .map_err(|e| csv_error(path, e))
            })
            .collect::<Result<Vec<Vec<String>>>>()?;
        NeLexicon::new(languages, rows)
    }

    pub fn languages(&self) -> &[String] {
        &self.languages
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn column(&self, lang: &str) -> Result<usize> {
        self.languages
            .iter()
            .position(|l| l == lang)
            .ok_or_else(|| Error::UnknownLanguage(lang.to_string()))
    }

    /// Replaces entity spans left to right, longest match first, with
    /// `__NE0`, `__NE1`, ... Every occurrence gets its own ordinal.
    pub fn mask(&self, line: &TokenizedLine, lang: &str) -> Result<(TokenizedLine, EntityMap)> {
        let index = &self.index[self.column(lang)?];
        let tokens = &line.tokens;
        let mut out = Vec::with_capacity(tokens.len());
        let mut map = EntityMap::new();
        let mut i = 0;
        while i < tokens.len() {
            let hit = index.get(&tokens[i]).and_then(|spans| {
                spans
                    .iter()
                    .find(|(span, _)| tokens[i..].starts_with(span))
                    .map(|(span, _)| span.len())
            });
            match hit {
                Some(n) => {
                    let k = map.len();
                    map.insert(k, tokens[i..i + n].to_vec());
                    out.push(format!("{MASK_PREFIX}{k}"));
                    i += n;
                }
                None => {
                    out.push(tokens[i].clone());
                    i += 1;
                }
            }
        }
        Ok((TokenizedLine::new(out), map))
    }

    /// Form of an entity in another language, if the table has one.
    pub fn translate(&self, surface: &str, from: &str, to: &str) -> Result<Option<&str>> {
        let (f, t) = (self.column(from)?, self.column(to)?);
        Ok(self
            .rows
            .iter()
            .find(|row| row[f].as_deref() == Some(surface))
            .and_then(|row| row[t].as_deref()))
    }
}

/// Restores masked spans. Mask tokens without an entry are left as they are.
pub fn unmask_named_entities(line: &TokenizedLine, map: &EntityMap) -> TokenizedLine {
    let mut out = Vec::with_capacity(line.len());
    for token in &line.tokens {
        let span = token
            .strip_prefix(MASK_PREFIX)
            .and_then(|k| k.parse::<usize>().ok())
            .and_then(|k| map.get(&k));
        match span {
            Some(span) => out.extend(span.iter().cloned()),
            None => out.push(token.clone()),
        }
    }
    TokenizedLine::new(out)
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::io(path, io),
        other => Error::InvalidLexicon(format!("{}: {other:?}", path.display())),
    }
}
