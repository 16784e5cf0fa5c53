use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::{take_in_order, GreedyOutcome};

/// Portable bounded sampling on top of ChaCha20.
///
/// The 32-byte key is the little-endian seed followed by zeros. Bounded
/// draws use Lemire's multiply-and-reject method on 64-bit outputs, so a
/// seed yields the same sequence on every platform.
pub struct ChaChaSampler {
    rng: ChaCha20Rng,
}

impl ChaChaSampler {
    pub fn new(seed: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        ChaChaSampler {
            rng: ChaCha20Rng::from_seed(key),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform draw from `0..n`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let mut m = u128::from(self.next_u64()) * u128::from(n);
        if (m as u64) < n {
            let threshold = n.wrapping_neg() % n;
            while (m as u64) < threshold {
                m = u128::from(self.next_u64()) * u128::from(n);
            }
        }
        (m >> 64) as u64
    }
}

/// Fisher-Yates permutation of `0..n`.
pub fn shuffle(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaChaSampler::new(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        order.swap(i, j);
    }
    order
}

pub(super) fn sample(words: &[u64], budget: u64, seed: u64) -> GreedyOutcome {
    take_in_order(shuffle(words.len(), seed), words, budget)
}
