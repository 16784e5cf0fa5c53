use std::collections::HashMap;

use crate::corpus::tokenize;
use crate::Result;

use super::MetricScore;

pub const MAX_BLEU_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BleuSmoothing {
    None,
    /// Adds `k` to the matched and total counts of orders 2 and up.
    AddK(f64),
}

impl Default for BleuSmoothing {
    fn default() -> Self {
        BleuSmoothing::AddK(1.0)
    }
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], u64> {
    let mut out = HashMap::new();
    for w in tokens.windows(n) {
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

/// Corpus-level BLEU over corpus tokenization, one reference per hypothesis.
pub fn bleu<H: AsRef<str>, R: AsRef<str>>(
    hypotheses: &[H],
    references: &[R],
    smoothing: BleuSmoothing,
) -> Result<MetricScore> {
    super::same_length(hypotheses.len(), references.len())?;
    let mut correct = [0u64; MAX_BLEU_ORDER];
    let mut total = [0u64; MAX_BLEU_ORDER];
    let (mut sys_len, mut ref_len) = (0u64, 0u64);
    for (h, r) in hypotheses.iter().zip(references) {
        let h = tokenize(h.as_ref()).tokens;
        let r = tokenize(r.as_ref()).tokens;
        sys_len += h.len() as u64;
        ref_len += r.len() as u64;
        for n in 1..=MAX_BLEU_ORDER {
            let hc = ngram_counts(&h, n);
            let rc = ngram_counts(&r, n);
            total[n - 1] += hc.values().sum::<u64>();
            correct[n - 1] += hc
                .iter()
                .map(|(g, &c)| c.min(rc.get(g).copied().unwrap_or(0)))
                .sum::<u64>();
        }
    }

    let params = vec![
        ("max_n".to_string(), MAX_BLEU_ORDER.to_string()),
        (
            "smoothing".to_string(),
            match smoothing {
                BleuSmoothing::None => "none".to_string(),
                BleuSmoothing::AddK(k) => format!("add-k:{k}"),
            },
        ),
    ];
    let value = bleu_from_counts(&correct, &total, sys_len, ref_len, smoothing);
    Ok(MetricScore {
        metric: "BLEU".into(),
        value,
        params,
    })
}

fn bleu_from_counts(
    correct: &[u64; MAX_BLEU_ORDER],
    total: &[u64; MAX_BLEU_ORDER],
    sys_len: u64,
    ref_len: u64,
    smoothing: BleuSmoothing,
) -> f64 {
    if correct.iter().all(|&c| c == 0) {
        return 0.0;
    }
    let bp = if sys_len >= ref_len {
        1.0
    } else if sys_len > 0 {
        (1.0 - ref_len as f64 / sys_len as f64).exp()
    } else {
        0.0
    };
    let mut log_sum = 0.0;
    for n in 0..MAX_BLEU_ORDER {
        let (mut c, mut t) = (correct[n] as f64, total[n] as f64);
        if let (BleuSmoothing::AddK(k), true) = (smoothing, n > 0) {
            c += k;
            t += k;
        }
        if t == 0.0 || c == 0.0 {
            return 0.0;
        }
        log_sum += (100.0 * c / t).ln();
    }
    bp * (log_sum / MAX_BLEU_ORDER as f64).exp()
}
