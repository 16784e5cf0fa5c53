use rustc_hash::FxHashMap;

use crate::corpus::{TokenId, MAX_ORDER};
use crate::{Error, Result};

/// Sentence-start padding symbol.
pub const BOS: TokenId = TokenId::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothing {
    /// Raw relative frequencies; unseen events get probability 0.
    Mle,
    /// Interpolated absolute discounting down to a uniform floor over the
    /// vocabulary.
    AbsoluteDiscount { discount: f64 },
}

impl Smoothing {
    pub const DEFAULT_DISCOUNT: f64 = 0.75;

    pub fn absolute() -> Self {
        Smoothing::AbsoluteDiscount {
            discount: Self::DEFAULT_DISCOUNT,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ContextStats {
    total: u64,
    distinct: u64,
}

/// Word n-gram language model over token ids.
///
/// Each sentence is left-padded with `order - 1` [`BOS`] symbols; padding
/// only ever appears as context and is never predicted. Counts can be added
/// incrementally with [`NgramLm::add_line`]; probabilities are computed from
/// the current counts on demand.
#[derive(Debug, Clone)]
pub struct NgramLm {
    order: usize,
    smoothing: Smoothing,
    vocab_size: Option<usize>,
    // ngrams[k]: counts of (k+1)-grams ending in a predicted token
    ngrams: Vec<FxHashMap<Box<[TokenId]>, u64>>,
    // contexts[k]: stats of k-token contexts, k >= 1 (index 0 unused)
    contexts: Vec<FxHashMap<Box<[TokenId]>, ContextStats>>,
    tokens: u64,
    types: u64,
}

impl NgramLm {
    pub fn new(order: usize, smoothing: Smoothing) -> Result<Self> {
        if !(1..=MAX_ORDER).contains(&order) {
            return Err(Error::InvalidOrder(order));
        }
        Ok(NgramLm {
            order,
            smoothing,
            vocab_size: None,
            ngrams: vec![FxHashMap::default(); order],
            contexts: vec![FxHashMap::default(); order],
            tokens: 0,
            types: 0,
        })
    }

    /// Size of the support the uniform floor spreads over. Defaults to the
    /// observed types plus one slot for everything unseen.
    pub fn with_vocab_size(mut self, size: usize) -> Self {
        self.vocab_size = Some(size);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn smoothing(&self) -> Smoothing {
        self.smoothing
    }

    pub fn token_count(&self) -> u64 {
        self.tokens
    }

    /// Distinct word types seen in training.
    pub fn type_count(&self) -> u64 {
        self.types
    }

    pub fn support_size(&self) -> usize {
        let floor = self.types as usize + 1;
        self.vocab_size.map_or(floor, |v| v.max(self.types as usize))
    }

    fn padded(&self, line: &[TokenId]) -> Vec<TokenId> {
        let mut padded = vec![BOS; self.order - 1];
        padded.extend_from_slice(line);
        padded
    }

    pub fn add_line(&mut self, line: &[TokenId]) {
        let padded = self.padded(line);
        let h = self.order - 1;
        for i in 0..line.len() {
            let end = i + h;
            for k in 0..self.order {
                let window = &padded[end - k..=end];
                let count = self.ngrams[k].entry(window.into()).or_insert(0);
                *count += 1;
                let new_type = *count == 1;
                if k == 0 {
                    self.tokens += 1;
                    self.types += u64::from(new_type);
                } else {
                    let stats = self.contexts[k].entry(window[..k].into()).or_default();
                    stats.total += 1;
                    stats.distinct += u64::from(new_type);
                }
            }
        }
    }

    fn unigram(&self, word: TokenId) -> f64 {
        if self.tokens == 0 {
            return match self.smoothing {
                Smoothing::Mle => 0.0,
                Smoothing::AbsoluteDiscount { .. } => 1.0 / self.support_size() as f64,
            };
        }
        let c = self.ngrams[0].get([word].as_slice()).copied().unwrap_or(0) as f64;
        let n = self.tokens as f64;
        match self.smoothing {
            Smoothing::Mle => c / n,
            Smoothing::AbsoluteDiscount { discount } => {
                (c - discount).max(0.0) / n + discount * self.types as f64 / n / self.support_size() as f64
            }
        }
    }

    /// P(window.last | window[..last]); the window holds at most `order` ids.
    fn window_prob(&self, window: &[TokenId]) -> f64 {
        let k = window.len() - 1;
        if k == 0 {
            return self.unigram(window[0]);
        }
        let Some(stats) = self.contexts[k].get(&window[..k]) else {
            return self.window_prob(&window[1..]);
        };
        let c = self.ngrams[k].get(window).copied().unwrap_or(0) as f64;
        let total = stats.total as f64;
        match self.smoothing {
            Smoothing::Mle => c / total,
            Smoothing::AbsoluteDiscount { discount } => {
                (c - discount).max(0.0) / total
                    + discount * stats.distinct as f64 / total * self.window_prob(&window[1..])
            }
        }
    }

    /// P(word | context). Only the last `order - 1` context ids are used;
    /// shorter contexts are padded with [`BOS`].
    pub fn prob(&self, context: &[TokenId], word: TokenId) -> f64 {
        let h = self.order - 1;
        let mut window = vec![BOS; h.saturating_sub(context.len())];
        window.extend_from_slice(&context[context.len().saturating_sub(h)..]);
        window.push(word);
        self.window_prob(&window)
    }

    /// Cross-entropy of a line in bits per token; 0 for an empty line.
    pub fn cross_entropy(&self, line: &[TokenId]) -> f64 {
        if line.is_empty() {
            return 0.0;
        }
        let padded = self.padded(line);
        let h = self.order - 1;
        let log_sum: f64 = (0..line.len())
            .map(|i| self.window_prob(&padded[i..=i + h]).log2())
            .sum();
        -log_sum / line.len() as f64
    }

    pub fn perplexity<'a>(&self, lines: impl IntoIterator<Item = &'a [TokenId]>) -> f64 {
        let (mut bits, mut n) = (0.0, 0usize);
        for line in lines {
            bits += self.cross_entropy(line) * line.len() as f64;
            n += line.len();
        }
        if n == 0 {
            1.0
        } else {
            (bits / n as f64).exp2()
        }
    }

    /// Contexts (of the model's full length) seen in training.
    pub fn observed_contexts(&self) -> Vec<Vec<TokenId>> {
        let h = self.order - 1;
        if h == 0 {
            return vec![Vec::new()];
        }
        let mut out: Vec<Vec<TokenId>> = self.contexts[h].keys().map(|k| k.to_vec()).collect();
        out.sort();
        out
    }

    /// Word types seen in training, ascending.
    pub fn observed_words(&self) -> Vec<TokenId> {
        let mut out: Vec<TokenId> = self.ngrams[0].keys().map(|k| k[0]).collect();
        out.sort_unstable();
        out
    }
}

/// Trains a model on the given lines. Smoothed models refuse an empty
/// training set; MLE models accept it and assign probability 0 everywhere.
pub fn train_lm<'a>(
    lines: impl IntoIterator<Item = &'a [TokenId]>,
    order: usize,
    smoothing: Smoothing,
) -> Result<NgramLm> {
    let mut lm = NgramLm::new(order, smoothing)?;
    for line in lines {
        lm.add_line(line);
    }
    if lm.tokens == 0 && smoothing != Smoothing::Mle {
        return Err(Error::EmptyTrainingSet);
    }
    Ok(lm)
}

pub fn cross_entropy(lm: &NgramLm, line: &[TokenId]) -> f64 {
    lm.cross_entropy(line)
}
