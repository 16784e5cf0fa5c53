use crate::corpus::TokenId;
use crate::{Error, Result};

use super::lm::NgramLm;

/// Which half of the unchosen lines a line belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Split of the corpus into chosen lines `c` and the remaining lines cut in
/// two halves `l` and `r`, in corpus order. `l` gets the extra line when the
/// remainder is odd.
#[derive(Debug, Clone)]
pub struct EntPartition {
    side: Vec<Option<Side>>,
    chosen: Vec<usize>,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl EntPartition {
    pub fn split(n_lines: usize, chosen: &[usize]) -> Self {
        let mut is_chosen = vec![false; n_lines];
        for &c in chosen {
            is_chosen[c] = true;
        }
        let rest: Vec<usize> = (0..n_lines).filter(|&i| !is_chosen[i]).collect();
        let cut = rest.len().div_ceil(2);
        let (left, right) = (rest[..cut].to_vec(), rest[cut..].to_vec());

        let mut side = vec![None; n_lines];
        for &i in &left {
            side[i] = Some(Side::Left);
        }
        for &i in &right {
            side[i] = Some(Side::Right);
        }
        EntPartition {
            side,
            chosen: chosen.to_vec(),
            left,
            right,
        }
    }

    pub fn side(&self, line: usize) -> Option<Side> {
        self.side.get(line).copied().flatten()
    }

    pub fn chosen(&self) -> &[usize] {
        &self.chosen
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }
}

/// Entropy score of an unchosen line: H_c(s) - H_r(s) for lines on the left,
/// H_c(s) - H_l(s) for lines on the right. Each half is measured with the
/// model of the opposite half, so no line is scored by a model trained on it.
pub fn score_ent(
    line: usize,
    tokens: &[TokenId],
    partition: &EntPartition,
    lm_c: &NgramLm,
    lm_l: &NgramLm,
    lm_r: &NgramLm,
) -> Result<f64> {
    let opposite = match partition.side(line) {
        Some(Side::Left) => lm_r,
        Some(Side::Right) => lm_l,
        None => return Err(Error::LineInChosenSet(line)),
    };
    Ok(lm_c.cross_entropy(tokens) - opposite.cross_entropy(tokens))
}

/// The two language-model flavours of the entropy method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntVariant {
    /// Lightweight toolkit setting: bigram models throughout.
    Nltk,
    /// KenLM setting: 5-gram chosen-set model, bigram half models.
    KenLm,
}

impl EntVariant {
    pub fn name(&self) -> &'static str {
        match self {
            EntVariant::Nltk => "entN",
            EntVariant::KenLm => "entK",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntConfig {
    pub variant: EntVariant,
    pub chosen_order: usize,
    pub half_order: usize,
    pub discount: f64,
    /// Lines picked by `SN` before the language models take over.
    pub warm_start: usize,
}

impl EntConfig {
    pub fn new(variant: EntVariant) -> Self {
        let chosen_order = match variant {
            EntVariant::Nltk => 2,
            EntVariant::KenLm => 5,
        };
        EntConfig {
            variant,
            chosen_order,
            half_order: 2,
            discount: super::Smoothing::DEFAULT_DISCOUNT,
            warm_start: 5,
        }
    }
}
