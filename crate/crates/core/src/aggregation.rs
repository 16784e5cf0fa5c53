//! Language pools and multi-language score aggregation.
//!
//! A pool names the reference languages whose per-language scores are
//! summed into one sentence score. Aggregated selection keeps a separate
//! coverage set per pool language, so each row still follows the single
//! language formula.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::corpus::{Language, LanguageMetadata};
use crate::selection::{sum_rows, ScoreMatrix};
use crate::{Error, Result};

/// Pool size used by the per-family and per-person policies when none is given.
pub const DEFAULT_POOL_SIZE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoolPolicy {
    /// Every language except the target.
    PerLanguage,
    /// The most-spoken member of each of the k most-spoken families.
    PerFamily,
    /// The k most-spoken languages.
    PerPerson,
    /// The target's declared neighbors.
    PerNeighbor,
}

impl PoolPolicy {
    pub fn letter(&self) -> char {
        match self {
            PoolPolicy::PerLanguage => 'L',
            PoolPolicy::PerFamily => 'F',
            PoolPolicy::PerPerson => 'P',
            PoolPolicy::PerNeighbor => 'N',
        }
    }
}

impl FromStr for PoolPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" | "per_language" => Ok(PoolPolicy::PerLanguage),
            "F" | "per_family" => Ok(PoolPolicy::PerFamily),
            "P" | "per_person" => Ok(PoolPolicy::PerPerson),
            "N" | "per_neighbor" => Ok(PoolPolicy::PerNeighbor),
            _ => Err(Error::UnknownPolicy(s.to_string())),
        }
    }
}

impl fmt::Display for PoolPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoolPolicy::PerLanguage => "per_language",
            PoolPolicy::PerFamily => "per_family",
            PoolPolicy::PerPerson => "per_person",
            PoolPolicy::PerNeighbor => "per_neighbor",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguagePool {
    pub policy: PoolPolicy,
    /// Member codes, sorted.
    pub members: Vec<String>,
    /// Pool size, for the policies that take one.
    pub k: Option<usize>,
}

fn speakers(lang: &Language) -> Result<u64> {
    lang.speakers.ok_or_else(|| Error::InsufficientMetadata {
        code: lang.code.clone(),
        field: "speakers",
    })
}

/// Most-spoken first, ties by code.
fn by_speakers(langs: &mut [(&Language, u64)]) {
    langs.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.code.cmp(&b.0.code)));
}

/// Builds a pool for `target` from metadata. `k` defaults to
/// [`DEFAULT_POOL_SIZE`] and is ignored by the per-language and
/// per-neighbor policies. The target itself never joins a pool.
pub fn build_pool(
    metadata: &LanguageMetadata,
    policy: PoolPolicy,
    target: &str,
    k: Option<usize>,
) -> Result<LanguagePool> {
    if metadata.is_empty() {
        return Err(Error::InvalidMetadata("no languages".into()));
    }
    let others = || metadata.languages().iter().filter(|l| l.code != target);
    let size = k.unwrap_or(DEFAULT_POOL_SIZE);
    let (mut members, k): (Vec<String>, _) = match policy {
        PoolPolicy::PerLanguage => (others().map(|l| l.code.clone()).collect(), None),
        PoolPolicy::PerNeighbor => {
            let lang = metadata
                .get(target)
                .ok_or_else(|| Error::UnknownLanguage(target.to_string()))?;
            (lang.neighbors.clone(), None)
        }
        PoolPolicy::PerPerson => {
            let mut ranked = others()
                .map(|l| Ok((l, speakers(l)?)))
                .collect::<Result<Vec<_>>>()?;
            by_speakers(&mut ranked);
            (
                ranked.iter().take(size).map(|(l, _)| l.code.clone()).collect(),
                Some(size),
            )
        }
        PoolPolicy::PerFamily => {
            let mut families: BTreeMap<&str, Vec<(&Language, u64)>> = BTreeMap::new();
            for l in others() {
                let family = l.family.as_deref().ok_or_else(|| Error::InsufficientMetadata {
                    code: l.code.clone(),
                    field: "family",
                })?;
                families.entry(family).or_default().push((l, speakers(l)?));
            }
            // Each family is represented by its top member and weighed by its total speakers.
            let mut heads: Vec<(&Language, u64)> = families
                .into_values()
                .map(|mut members| {
                    by_speakers(&mut members);
                    (members[0].0, members.iter().map(|m| m.1).sum())
                })
                .collect();
            by_speakers(&mut heads);
            (
                heads.iter().take(size).map(|(l, _)| l.code.clone()).collect(),
                Some(size),
            )
        }
    };
    members.sort();
    members.dedup();
    Ok(LanguagePool { policy, members, k })
}

/// Sum of the pool members' rows, per line. Rows are added in language-code
/// order regardless of the order of `pool.members`.
pub fn aggregate_scores(matrix: &ScoreMatrix, pool: &LanguagePool) -> Result<Vec<f64>> {
    let mut members = pool.members.clone();
    members.sort();
    let rows = members
        .iter()
        .map(|m| matrix.row(m).ok_or_else(|| Error::MissingRow(m.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..matrix.n_lines())
        .map(|c| sum_rows(rows.iter().map(|r| r[c])))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{builtin_targets, ParallelCorpus};
    use crate::scoring::{Coverage, Scorer};
    use crate::selection::reference_texts;

    fn lang(code: &str, family: &str, speakers: u64) -> Language {
        Language {
            code: code.into(),
            name: code.into(),
            family: Some(family.into()),
            speakers: Some(speakers),
            resource_level: 3,
            neighbors: Vec::new(),
        }
    }

    fn meta() -> LanguageMetadata {
        LanguageMetadata::new(vec![
            lang("aaa", "X", 10),
            lang("bbb", "X", 30),
            lang("ccc", "Y", 25),
            lang("ddd", "Z", 5),
            lang("eee", "Z", 30),
        ])
        .unwrap()
    }

    #[test]
    fn frisian_neighbors() {
        let fry = &builtin_targets()[0];
        let pool = build_pool(&fry.metadata(), PoolPolicy::PerNeighbor, "fry", None).unwrap();
        let mut expected = vec![
            "afr", "deu", "eng", "fra", "ita", "nld", "nor", "por", "ron", "swe",
        ];
        expected.sort();
        assert_eq!(pool.members, expected);
    }

    #[test]
    fn person_and_family() {
        let m = meta();
        let p = build_pool(&m, PoolPolicy::PerPerson, "zzz", Some(1)).unwrap();
        assert_eq!(p.members, ["bbb"]);
        let p = build_pool(&m, PoolPolicy::PerPerson, "bbb", Some(2)).unwrap();
        assert_eq!(p.members, ["ccc", "eee"]);
        // Family weights: X 40, Z 35, Y 25.
        let f = build_pool(&m, PoolPolicy::PerFamily, "zzz", Some(2)).unwrap();
        assert_eq!(f.members, ["bbb", "eee"]);
        let l = build_pool(&m, PoolPolicy::PerLanguage, "aaa", None).unwrap();
        assert_eq!(l.members, ["bbb", "ccc", "ddd", "eee"]);
    }

    #[test]
    fn missing_fields() {
        let mut a = lang("aaa", "X", 1);
        a.speakers = None;
        let m = LanguageMetadata::new(vec![a, lang("bbb", "Y", 2)]).unwrap();
        assert!(matches!(
            build_pool(&m, PoolPolicy::PerPerson, "bbb", None),
            Err(Error::InsufficientMetadata {
                field: "speakers",
                ..
            })
        ));
        assert!(matches!("Q".parse::<PoolPolicy>(), Err(Error::UnknownPolicy(_))));
    }

    #[test]
    fn sums_rows() {
        let c = ParallelCorpus::new(
            None,
            vec![
                ("p".into(), vec!["a".into(), "b b".into()]),
                ("q".into(), vec!["c c c".into(), "".into()]),
            ],
        )
        .unwrap();
        let refs = reference_texts(&c, &["p".into(), "q".into()], 1).unwrap();
        let mut m = ScoreMatrix::new(&refs, Scorer::S).unwrap();
        let cov: Vec<_> = refs.iter().map(|r| Coverage::new(&r.table)).collect();
        m.refresh(&refs, &cov);
        let pool = |members: &[&str]| LanguagePool {
            policy: PoolPolicy::PerLanguage,
            members: members.iter().map(|s| s.to_string()).collect(),
            k: None,
        };
        // Rows [1, 4] and [9, 0].
        assert_eq!(aggregate_scores(&m, &pool(&["q", "p"])).unwrap(), [10.0, 4.0]);
        assert_eq!(aggregate_scores(&m, &pool(&["p"])).unwrap(), [1.0, 4.0]);
        assert_eq!(aggregate_scores(&m, &pool(&["p", "q"])).unwrap(), m.combined());
        assert!(matches!(
            aggregate_scores(&m, &pool(&["r"])),
            Err(Error::MissingRow(_))
        ));
    }
}
