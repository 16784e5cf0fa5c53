use crate::{Error, Result};

use super::chrf::{chrf, DEFAULT_BETA, DEFAULT_CHAR_ORDER};

/// Picks the candidate with the largest summed similarity to all others,
/// using sentence chrF with the candidate as hypothesis. Ties go to the
/// lowest index; a single candidate scores 0.
pub fn centeredness_combine<S: AsRef<str>>(candidates: &[S]) -> Result<(usize, f64)> {
    centeredness_with(candidates, |a, b| {
        chrf(a, b, DEFAULT_CHAR_ORDER, DEFAULT_BETA).value
    })
}

/// [`centeredness_combine`] with a caller-supplied similarity `sim(candidate, other)`.
pub fn centeredness_with<S: AsRef<str>>(
    candidates: &[S],
    sim: impl Fn(&str, &str) -> f64,
) -> Result<(usize, f64)> {
    if candidates.is_empty() {
        return Err(Error::EmptyCandidateList);
    }
    let mut best = (0, f64::NEG_INFINITY);
    for (i, a) in candidates.iter().enumerate() {
        let total = candidates
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(0.0, |acc, (_, b)| acc + sim(a.as_ref(), b.as_ref()));
        if total > best.1 {
            best = (i, total);
        }
    }
    Ok(best)
}

/// Combines parallel hypothesis streams line by line.
pub fn combine_streams<S: AsRef<str>>(streams: &[Vec<S>]) -> Result<Vec<String>> {
    let n = streams.first().ok_or(Error::EmptyCandidateList)?.len();
    for s in streams {
        super::same_length(n, s.len())?;
    }
    (0..n)
        .map(|line| {
            let candidates: Vec<&str> = streams.iter().map(|s| s[line].as_ref()).collect();
            let (i, _) = centeredness_combine(&candidates)?;
            Ok(candidates[i].to_string())
        })
        .collect()
}
