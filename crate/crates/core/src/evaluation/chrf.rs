use std::collections::HashMap;

use super::MetricScore;

pub const DEFAULT_CHAR_ORDER: usize = 6;
pub const DEFAULT_BETA: f64 = 2.0;

/// Hypothesis, reference and matched character n-gram counts per order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChrfStats {
    pub orders: Vec<[u64; 3]>,
}

impl ChrfStats {
    pub fn new(max_n: usize) -> Self {
        ChrfStats {
            orders: vec![[0; 3]; max_n],
        }
    }

    pub fn of(hypothesis: &str, reference: &str, max_n: usize) -> Self {
        let hyp: Vec<char> = hypothesis.chars().filter(|c| !c.is_whitespace()).collect();
        let refr: Vec<char> = reference.chars().filter(|c| !c.is_whitespace()).collect();
        let mut stats = ChrfStats::new(max_n);
        for n in 1..=max_n {
            let h = char_ngrams(&hyp, n);
            let r = char_ngrams(&refr, n);
            let matched = h
                .iter()
                .map(|(g, &c)| c.min(r.get(g).copied().unwrap_or(0)))
                .sum();
            stats.orders[n - 1] = [h.values().sum(), r.values().sum(), matched];
        }
        stats
    }

    pub fn add(&mut self, other: &ChrfStats) {
        for (a, b) in self.orders.iter_mut().zip(&other.orders) {
            for k in 0..3 {
                a[k] += b[k];
            }
        }
    }

    /// Precision and recall are averaged over the orders where both sides
    /// have n-grams, then combined into F_beta. 0 when no order qualifies.
    pub fn f_score(&self, beta: f64) -> f64 {
        let (mut p, mut r, mut effective) = (0.0, 0.0, 0usize);
        for &[hyp, refr, matched] in &self.orders {
            if hyp > 0 && refr > 0 {
                p += matched as f64 / hyp as f64;
                r += matched as f64 / refr as f64;
                effective += 1;
            }
        }
        if effective == 0 {
            return 0.0;
        }
        p /= effective as f64;
        r /= effective as f64;
        let factor = beta * beta;
        if p + r == 0.0 {
            return 0.0;
        }
        100.0 * (1.0 + factor) * p * r / (factor * p + r)
    }
}

fn char_ngrams(chars: &[char], n: usize) -> HashMap<&[char], u64> {
    let mut out = HashMap::new();
    for w in chars.windows(n) {
        *out.entry(w).or_insert(0) += 1;
    }
    out
}

fn chrf_params(max_n: usize, beta: f64) -> Vec<(String, String)> {
    vec![
        ("max_n".into(), max_n.to_string()),
        ("beta".into(), beta.to_string()),
    ]
}

/// Sentence-level chrF on characters with whitespace removed.
pub fn chrf(hypothesis: &str, reference: &str, max_n: usize, beta: f64) -> MetricScore {
    MetricScore {
        metric: "chrF".into(),
        value: ChrfStats::of(hypothesis, reference, max_n).f_score(beta),
        params: chrf_params(max_n, beta),
    }
}

/// Corpus-level chrF: statistics are summed over sentence pairs first.
pub fn corpus_chrf<H: AsRef<str>, R: AsRef<str>>(
    hypotheses: &[H],
    references: &[R],
    max_n: usize,
    beta: f64,
) -> crate::Result<MetricScore> {
    super::same_length(hypotheses.len(), references.len())?;
    let mut total = ChrfStats::new(max_n);
    for (h, r) in hypotheses.iter().zip(references) {
        total.add(&ChrfStats::of(h.as_ref(), r.as_ref(), max_n));
    }
    Ok(MetricScore {
        metric: "chrF".into(),
        value: total.f_score(beta),
        params: chrf_params(max_n, beta),
    })
}
