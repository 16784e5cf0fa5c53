use std::collections::HashSet;

use crate::corpus::ParallelCorpus;
use crate::selection::Ranking;
use crate::{Error, Result};

/// Lines left after carving every experiment's seed corpus out of the text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestSetSpec {
    pub corpus_checksum: String,
    /// Included line ids, in corpus order.
    pub included: Vec<String>,
    /// Train and validation ids removed for each ranking, in input order.
    pub excluded: Vec<Vec<String>>,
}

/// Corpus lines minus the union of all rankings' train and validation ids.
pub fn intersection_test_set(corpus: &ParallelCorpus, rankings: &[Ranking]) -> Result<TestSetSpec> {
    let checksum = corpus.checksum();
    let mut removed: HashSet<&str> = HashSet::new();
    let mut excluded = Vec::with_capacity(rankings.len());
    for r in rankings {
        if r.corpus_checksum != checksum {
            return Err(Error::CorpusMismatch {
                expected: checksum,
                found: r.corpus_checksum.clone(),
            });
        }
        let (train, valid) = r.split_ids();
        let ids: Vec<String> = train.iter().chain(&valid).map(|s| s.to_string()).collect();
        removed.extend(train.into_iter().chain(valid));
        excluded.push(ids);
    }
    let included = corpus
        .line_ids()
        .iter()
        .filter(|id| !removed.contains(id.as_str()))
        .cloned()
        .collect();
    Ok(TestSetSpec {
        corpus_checksum: checksum,
        included,
        excluded,
    })
}

impl TestSetSpec {
    /// `#corpus_checksum` header followed by one included id per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("#corpus_checksum\t{}\n", self.corpus_checksum);
        for id in &self.included {
            out.push_str(id);
            out.push('\n');
        }
        out
    }
}
