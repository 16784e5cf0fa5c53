use fixedbitset::FixedBitSet;

use crate::scoring::{Coverage, CoverageState, Scorer};
use crate::{Error, Result};

use super::matrix::{sum_rows, ScoreMatrix};
use super::ReferenceText;

/// One greedy decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pick {
    pub line: usize,
    pub score: f64,
    pub cumulative_words: u64,
}

/// Picks of a run, and whether candidates ran out before the budget was met.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyOutcome {
    pub picks: Vec<Pick>,
    pub exhausted: bool,
}

/// Greedy budgeted selection over a relaxed-memoized [`ScoreMatrix`].
///
/// Lines with zero words in the budget language are never candidates. Ties
/// go to the lowest line position.
pub struct GreedySelector<'a> {
    refs: &'a [ReferenceText],
    words: &'a [u64],
    matrix: ScoreMatrix,
    state: CoverageState,
    taken: FixedBitSet,
}

impl<'a> GreedySelector<'a> {
    pub fn new(refs: &'a [ReferenceText], scorer: Scorer, words: &'a [u64]) -> Result<Self> {
        if refs.is_empty() {
            return Err(Error::NoReferenceLanguages);
        }
        let matrix = ScoreMatrix::new(refs, scorer)?;
        if words.len() != matrix.n_lines() {
            return Err(Error::LengthMismatch {
                left: matrix.n_lines(),
                right: words.len(),
            });
        }
        Ok(GreedySelector {
            refs,
            words,
            state: CoverageState::new(refs.iter().map(|r| &r.table)),
            taken: FixedBitSet::with_capacity(words.len()),
            matrix,
        })
    }

    pub fn matrix(&self) -> &ScoreMatrix {
        &self.matrix
    }

    pub fn state(&self) -> &CoverageState {
        &self.state
    }

    pub fn is_selected(&self, line: usize) -> bool {
        self.taken.contains(line)
    }

    /// Brings every stale matrix entry up to date.
    pub fn refresh(&mut self) {
        self.matrix.refresh(self.refs, &self.state.coverage);
    }

    /// Best remaining candidate under the refreshed matrix.
    fn best(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (line, &score) in self.matrix.combined().iter().enumerate() {
            if self.taken.contains(line) || self.words[line] == 0 {
                continue;
            }
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((line, score));
            }
        }
        best
    }

    /// Adds `line` to the selection; returns the stale lines per row.
    pub fn commit(&mut self, line: usize, score: f64) -> Result<(Pick, Vec<Vec<usize>>)> {
        if line >= self.words.len() {
            return Err(Error::UnknownLine(line.to_string()));
        }
        let stale = self
            .matrix
            .memo_update(self.refs, &mut self.state.coverage, line)?;
        self.taken.insert(line);
        self.state.selected.push(line);
        self.state.words_used += self.words[line];
        Ok((
            Pick {
                line,
                score,
                cumulative_words: self.state.words_used,
            },
            stale,
        ))
    }

    /// Refreshes, picks the argmax and commits it. `None` once no candidate
    /// is left.
    pub fn step(&mut self) -> Option<Pick> {
        self.refresh();
        let (line, score) = self.best()?;
        Some(self.commit(line, score).expect("line in range").0)
    }

    /// Steps until the words used reach `budget` or candidates run out.
    pub fn run(mut self, budget: u64) -> GreedyOutcome {
        self.run_until(budget, usize::MAX)
    }

    /// As [`GreedySelector::run`], stopping early after `max_picks` picks.
    pub fn run_until(&mut self, budget: u64, max_picks: usize) -> GreedyOutcome {
        let mut picks = Vec::new();
        while self.state.words_used < budget && picks.len() < max_picks {
            match self.step() {
                Some(p) => picks.push(p),
                None => {
                    return GreedyOutcome {
                        picks,
                        exhausted: true,
                    }
                }
            }
        }
        GreedyOutcome {
            picks,
            exhausted: false,
        }
    }
}

/// Reference implementation: rescans every language and every remaining
/// line at each step. Produces the same picks and scores as
/// [`GreedySelector`], only slower.
pub fn select_greedy_naive(
    refs: &[ReferenceText],
    scorer: Scorer,
    words: &[u64],
    budget: u64,
) -> Result<GreedyOutcome> {
    if refs.is_empty() {
        return Err(Error::NoReferenceLanguages);
    }
    for r in refs {
        scorer.check(&r.table)?;
        if r.text.len() != words.len() {
            return Err(Error::LengthMismatch {
                left: words.len(),
                right: r.text.len(),
            });
        }
    }
    let mut coverage: Vec<Coverage> = refs.iter().map(|r| Coverage::new(&r.table)).collect();
    let mut taken = vec![false; words.len()];
    let mut used = 0u64;
    let mut picks = Vec::new();

    while used < budget {
        let mut best: Option<(usize, f64)> = None;
        for line in 0..words.len() {
            if taken[line] || words[line] == 0 {
                continue;
            }
            let score = sum_rows(
                refs.iter()
                    .zip(&coverage)
                    .map(|(r, cov)| scorer.score(&r.text.line(line), &r.table, cov)),
            );
            if best.is_none_or(|(_, s)| score > s) {
                best = Some((line, score));
            }
        }
        let Some((line, score)) = best else {
            return Ok(GreedyOutcome {
                picks,
                exhausted: true,
            });
        };
        taken[line] = true;
        used += words[line];
        for (r, cov) in refs.iter().zip(coverage.iter_mut()) {
            cov.cover(&r.text.line(line));
        }
        picks.push(Pick {
            line,
            score,
            cumulative_words: used,
        });
    }
    Ok(GreedyOutcome {
        picks,
        exhausted: false,
    })
}
