//! Sentence score functions.
//!
//! The n-gram family sums the corpus frequency F(g) of every n-gram of a
//! candidate line that no selected line contains yet:
//!
//! * `S`     = Σ_i F(w_i), unknown unigrams only
//! * `SN`    = S / L
//! * `SNG_J` = (1/L) Σ_{j=1..J} Σ_i F(g_{i,j}), unknown n-grams of every order up to J
//!
//! Repeated n-grams inside a line contribute once per position. Sums are
//! accumulated as integers and divided once, so any two code paths that
//! agree on the unknown set produce bit-identical scores.

mod entropy;
mod lm;

use fixedbitset::FixedBitSet;

use crate::corpus::{FrequencyTable, LineGrams, NgramId};
use crate::{Error, Result};

pub use entropy::{score_ent, EntConfig, EntPartition, EntVariant, Side};
pub use lm::{cross_entropy, train_lm, NgramLm, Smoothing, BOS};

/// Set of n-grams (of one language) already present in a selected line.
#[derive(Debug, Clone)]
pub struct Coverage {
    covered: FixedBitSet,
}

impl Coverage {
    pub fn new(table: &FrequencyTable) -> Self {
        Coverage {
            covered: FixedBitSet::with_capacity(table.num_ngrams()),
        }
    }

    #[inline]
    pub fn is_covered(&self, id: NgramId) -> bool {
        self.covered.contains(id as usize)
    }

    /// Marks every n-gram of `line` covered and returns the ids that were not
    /// covered before, each once.
    pub fn cover(&mut self, line: &LineGrams<'_>) -> Vec<NgramId> {
        let mut fresh = Vec::new();
        for &id in line.all() {
            if !self.covered.put(id as usize) {
                fresh.push(id);
            }
        }
        fresh
    }

    pub fn count(&self) -> usize {
        self.covered.count_ones(..)
    }

    /// Covered ids, ascending.
    pub fn ids(&self) -> impl Iterator<Item = NgramId> + '_ {
        self.covered.ones().map(|i| i as NgramId)
    }
}

/// Selection progress shared by all reference languages of a run.
#[derive(Debug, Clone)]
pub struct CoverageState {
    pub selected: Vec<usize>,
    /// One coverage set per reference language, in the run's language order.
    pub coverage: Vec<Coverage>,
    pub words_used: u64,
}

impl CoverageState {
    pub fn new<'a>(tables: impl IntoIterator<Item = &'a FrequencyTable>) -> Self {
        CoverageState {
            selected: Vec::new(),
            coverage: tables.into_iter().map(Coverage::new).collect(),
            words_used: 0,
        }
    }
}

#[inline]
fn unknown_mass(grams: &[NgramId], table: &FrequencyTable, cov: &Coverage) -> u64 {
    grams
        .iter()
        .filter(|&&id| !cov.is_covered(id))
        .map(|&id| table.frequency(id))
        .sum()
}

#[inline]
fn normalized(mass: u64, len: usize) -> f64 {
    if len == 0 {
        0.0
    } else {
        mass as f64 / len as f64
    }
}

/// `S`: frequency sum of the line's unknown words.
pub fn score_s(line: &LineGrams<'_>, table: &FrequencyTable, cov: &Coverage) -> f64 {
    unknown_mass(line.order(1), table, cov) as f64
}

/// `SN`: `S` divided by the line length; 0 for an empty line.
pub fn score_sn(line: &LineGrams<'_>, table: &FrequencyTable, cov: &Coverage) -> f64 {
    normalized(unknown_mass(line.order(1), table, cov), line.len())
}

/// `SNG_J`: length-normalized frequency sum of unknown n-grams of orders `1..=order`.
pub fn score_sng(line: &LineGrams<'_>, table: &FrequencyTable, cov: &Coverage, order: usize) -> Result<f64> {
    check_order(table, line, order)?;
    Ok(normalized(
        unknown_mass(line.up_to(order), table, cov),
        line.len(),
    ))
}

fn check_order(table: &FrequencyTable, line: &LineGrams<'_>, order: usize) -> Result<()> {
    let available = table.max_order().min(line.max_order());
    if order == 0 {
        return Err(Error::InvalidOrder(0));
    }
    if order > available {
        return Err(Error::OrderExceedsTable {
            requested: order,
            available,
        });
    }
    Ok(())
}

/// One of the n-gram score functions, with its order fixed up front.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scorer {
    S,
    Sn,
    Sng(usize),
}

impl Scorer {
    /// Highest n-gram order the score reads (and selection must cover).
    pub fn order(&self) -> usize {
        match self {
            Scorer::S | Scorer::Sn => 1,
            Scorer::Sng(j) => *j,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Scorer::S => "s".into(),
            Scorer::Sn => "sn".into(),
            Scorer::Sng(j) => format!("sng{j}"),
        }
    }

    /// Scores a line whose encoding and table hold at least `self.order()`
    /// orders; the caller guarantees that (see [`Scorer::check`]).
    #[inline]
    pub fn score(&self, line: &LineGrams<'_>, table: &FrequencyTable, cov: &Coverage) -> f64 {
        match *self {
            Scorer::S => score_s(line, table, cov),
            Scorer::Sn => score_sn(line, table, cov),
            Scorer::Sng(j) => normalized(unknown_mass(line.up_to(j), table, cov), line.len()),
        }
    }

    pub fn check(&self, table: &FrequencyTable) -> Result<()> {
        let j = self.order();
        if j == 0 || j > crate::corpus::MAX_ORDER {
            return Err(Error::InvalidOrder(j));
        }
        if j > table.max_order() {
            return Err(Error::OrderExceedsTable {
                requested: j,
                available: table.max_order(),
            });
        }
        Ok(())
    }
}
