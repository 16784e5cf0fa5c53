use rayon::prelude::*;

use crate::corpus::TokenId;
use crate::scoring::{score_ent, EntConfig, EntPartition, NgramLm, Scorer, Side, Smoothing};
use crate::Result;

use super::{GreedyOutcome, GreedySelector, Pick, ReferenceText};

/// Entropy-based greedy selection on one reference language.
///
/// The first `warm_start` lines come from `SN` greedy. The remaining lines
/// are then split into halves `l` and `r`, whose models are trained once;
/// each line's entropy under the opposite half is cached. Only the
/// chosen-set model changes between steps, so every candidate is rescored
/// against it at each step.
pub fn select_entropy(
    reference: &ReferenceText,
    words: &[u64],
    config: EntConfig,
    budget: u64,
) -> Result<GreedyOutcome> {
    let refs = std::slice::from_ref(reference);
    let mut warm = GreedySelector::new(refs, Scorer::Sn, words)?;
    let outcome = warm.run_until(budget, config.warm_start);
    let mut picks = outcome.picks;
    let mut used = picks.last().map_or(0, |p| p.cumulative_words);
    if outcome.exhausted || used >= budget {
        return Ok(GreedyOutcome {
            picks,
            exhausted: outcome.exhausted,
        });
    }

    // Unigram ids double as token ids: order-1 grams are listed by position.
    let tokens: Vec<&[TokenId]> = reference.text.lines().map(|l| l.order(1)).collect();
    let vocab = reference.table.vocabulary().len().max(1);
    let smoothing = Smoothing::AbsoluteDiscount {
        discount: config.discount,
    };
    let model = |order: usize, lines: &[usize]| -> Result<NgramLm> {
        let mut lm = NgramLm::new(order, smoothing)?.with_vocab_size(vocab);
        for &i in lines {
            lm.add_line(tokens[i]);
        }
        Ok(lm)
    };

    let chosen: Vec<usize> = picks.iter().map(|p| p.line).collect();
    let partition = EntPartition::split(words.len(), &chosen);
    let lm_l = model(config.half_order, partition.left())?;
    let lm_r = model(config.half_order, partition.right())?;
    let mut lm_c = model(config.chosen_order, &chosen)?;

    let opposite: Vec<f64> = (0..words.len())
        .into_par_iter()
        .map(|i| match partition.side(i) {
            Some(Side::Left) => lm_r.cross_entropy(tokens[i]),
            Some(Side::Right) => lm_l.cross_entropy(tokens[i]),
            None => 0.0,
        })
        .collect();

    let mut candidates: Vec<usize> = partition
        .left()
        .iter()
        .chain(partition.right())
        .copied()
        .filter(|&i| words[i] > 0)
        .collect();
    candidates.sort_unstable();

    while used < budget {
        if candidates.is_empty() {
            return Ok(GreedyOutcome {
                picks,
                exhausted: true,
            });
        }
        let scores: Vec<f64> = candidates
            .par_iter()
            .map(|&i| lm_c.cross_entropy(tokens[i]) - opposite[i])
            .collect();
        let mut best = 0;
        for k in 1..scores.len() {
            if scores[k] > scores[best] {
                best = k;
            }
        }
        let line = candidates.remove(best);
        debug_assert_eq!(
            score_ent(line, tokens[line], &partition, &lm_c, &lm_l, &lm_r).ok(),
            Some(scores[best])
        );
        lm_c.add_line(tokens[line]);
        used += words[line];
        picks.push(Pick {
            line,
            score: scores[best],
            cumulative_words: used,
        });
    }
    Ok(GreedyOutcome {
        picks,
        exhausted: false,
    })
}
