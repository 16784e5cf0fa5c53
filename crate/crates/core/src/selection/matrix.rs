use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::corpus::{LineGrams, NgramId};
use crate::scoring::{Coverage, Scorer};
use crate::{Error, Result};

use super::ReferenceText;

/// For each n-gram id, the ascending list of lines containing it.
#[derive(Debug, Clone)]
pub struct InvertedIndex {
    offsets: Vec<u32>,
    postings: Vec<u32>,
}

impl InvertedIndex {
    pub fn build(reference: &ReferenceText) -> Self {
        let n_ngrams = reference.table.num_ngrams();
        let mut counts = vec![0u32; n_ngrams + 1];
        let mut seen = FixedBitSet::with_capacity(n_ngrams);
        let mut per_line: Vec<NgramId> = Vec::new();

        fn distinct(line: LineGrams<'_>, out: &mut Vec<NgramId>, seen: &mut FixedBitSet) {
            out.clear();
            for &id in line.all() {
                if !seen.put(id as usize) {
                    out.push(id);
                }
            }
            for &id in out.iter() {
                seen.set(id as usize, false);
            }
        }

        for line in reference.text.lines() {
            distinct(line, &mut per_line, &mut seen);
            for &id in &per_line {
                counts[id as usize + 1] += 1;
            }
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let offsets = counts.clone();
        let mut cursor = counts;
        let mut postings = vec![0u32; *offsets.last().unwrap_or(&0) as usize];
        for (i, line) in reference.text.lines().enumerate() {
            distinct(line, &mut per_line, &mut seen);
            for &id in &per_line {
                let slot = &mut cursor[id as usize];
                postings[*slot as usize] = i as u32;
                *slot += 1;
            }
        }
        InvertedIndex { offsets, postings }
    }

    pub fn lines_with(&self, id: NgramId) -> &[u32] {
        let id = id as usize;
        &self.postings[self.offsets[id] as usize..self.offsets[id + 1] as usize]
    }
}

#[derive(Debug, Clone)]
struct Row {
    language: String,
    values: Vec<f64>,
    dirty: FixedBitSet,
    dirty_list: Vec<u32>,
    index: InvertedIndex,
}

/// Languages × lines score matrix with line-level dirty tracking.
///
/// After [`ScoreMatrix::refresh`], every entry equals a fresh evaluation of
/// the scorer under the current coverage. Between refreshes only the lines
/// that share a newly covered n-gram with a picked line are recomputed.
#[derive(Debug, Clone)]
pub struct ScoreMatrix {
    scorer: Scorer,
    rows: Vec<Row>,
    combined: Vec<f64>,
    n_lines: usize,
}

impl ScoreMatrix {
    /// Builds the matrix with every entry dirty. `refs` must be sorted by
    /// language code; that order is also the summation order of the combined
    /// scores.
    pub fn new(refs: &[ReferenceText], scorer: Scorer) -> Result<Self> {
        let n_lines = refs.first().map_or(0, |r| r.text.len());
        let rows = refs
            .iter()
            .map(|r| {
                scorer.check(&r.table)?;
                if r.text.len() != n_lines {
                    return Err(Error::LengthMismatch {
                        left: n_lines,
                        right: r.text.len(),
                    });
                }
                let mut dirty = FixedBitSet::with_capacity(n_lines);
                dirty.insert_range(..);
                Ok(Row {
                    language: r.language.clone(),
                    values: vec![0.0; n_lines],
                    dirty,
                    dirty_list: (0..n_lines as u32).collect(),
                    index: InvertedIndex::build(r),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScoreMatrix {
            scorer,
            rows,
            combined: vec![0.0; n_lines],
            n_lines,
        })
    }

    pub fn languages(&self) -> impl Iterator<Item = &str> {
        self.rows.iter().map(|r| r.language.as_str())
    }

    pub fn n_lines(&self) -> usize {
        self.n_lines
    }

    pub fn scorer(&self) -> Scorer {
        self.scorer
    }

    pub fn row(&self, language: &str) -> Option<&[f64]> {
        self.rows
            .iter()
            .find(|r| r.language == language)
            .map(|r| r.values.as_slice())
    }

    pub fn value(&self, row: usize, line: usize) -> f64 {
        self.rows[row].values[line]
    }

    /// Row-sum per line, valid after a refresh.
    pub fn combined(&self) -> &[f64] {
        &self.combined
    }

    pub fn is_clean(&self) -> bool {
        self.rows.iter().all(|r| r.dirty_list.is_empty())
    }

    /// Stale lines of one row, in marking order.
    pub fn stale(&self, row: usize) -> &[u32] {
        &self.rows[row].dirty_list
    }

    /// Recomputes every dirty entry, then the combined score of every line
    /// touched in any row. Rows, and lines within a row, are evaluated in
    /// parallel; each entry is written by exactly one task, so the result
    /// does not depend on the thread count.
    pub fn refresh(&mut self, refs: &[ReferenceText], coverage: &[Coverage]) {
        let scorer = self.scorer;
        self.rows
            .par_iter_mut()
            .zip(refs.par_iter().zip(coverage.par_iter()))
            .for_each(|(row, (reference, cov))| {
                let fresh: Vec<f64> = row
                    .dirty_list
                    .par_iter()
                    .map(|&line| scorer.score(&reference.text.line(line as usize), &reference.table, cov))
                    .collect();
                for (&line, value) in row.dirty_list.iter().zip(fresh) {
                    row.values[line as usize] = value;
                }
            });

        let mut touched = FixedBitSet::with_capacity(self.n_lines);
        for row in &self.rows {
            for &line in &row.dirty_list {
                touched.insert(line as usize);
            }
        }
        for line in touched.ones() {
            self.combined[line] = sum_rows(self.rows.iter().map(|r| r.values[line]));
        }
        for row in &mut self.rows {
            for &line in &row.dirty_list {
                row.dirty.set(line as usize, false);
            }
            row.dirty_list.clear();
        }
    }

    /// Covers `picked` in every row and marks stale exactly the lines that
    /// contain at least one n-gram this pick newly covered (the picked line
    /// itself included). Returns the stale lines per row, ascending.
    pub fn memo_update(
        &mut self,
        refs: &[ReferenceText],
        coverage: &mut [Coverage],
        picked: usize,
    ) -> Result<Vec<Vec<usize>>> {
        if picked >= self.n_lines {
            return Err(Error::UnknownLine(picked.to_string()));
        }
        let mut stale = Vec::with_capacity(self.rows.len());
        for ((row, reference), cov) in self.rows.iter_mut().zip(refs).zip(coverage.iter_mut()) {
            let fresh = cov.cover(&reference.text.line(picked));
            let mut marked = Vec::new();
            for id in fresh {
                for &line in row.index.lines_with(id) {
                    if !row.dirty.put(line as usize) {
                        row.dirty_list.push(line);
                        marked.push(line as usize);
                    }
                }
            }
            marked.sort_unstable();
            stale.push(marked);
        }
        Ok(stale)
    }
}

/// Sums per-language scores in the given (language code) order.
#[inline]
pub fn sum_rows(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0, |acc, v| acc + v)
}
