//! Translation metrics, multi-source combination and shared test sets.

mod bleu;
mod centeredness;
mod chrf;
mod testset;

use std::fmt;

use crate::{Error, Result};

pub use bleu::{bleu, BleuSmoothing, MAX_BLEU_ORDER};
pub use centeredness::{centeredness_combine, centeredness_with, combine_streams};
pub use chrf::{chrf, corpus_chrf, ChrfStats, DEFAULT_BETA, DEFAULT_CHAR_ORDER};
pub use testset::{intersection_test_set, TestSetSpec};

/// A metric value on the 0-100 scale with the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricScore {
    pub metric: String,
    pub value: f64,
    pub params: Vec<(String, String)>,
}

/// Tab-separated `metric value params`, value with six decimals.
impl fmt::Display for MetricScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}\t{:.6}\t{}", self.metric, self.value, params.join(";"))
    }
}

fn same_length(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}
