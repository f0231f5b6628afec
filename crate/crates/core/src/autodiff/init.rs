//! Seeded parameter initialization.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

/// Deterministic initializer; parameters drawn in creation order from a
/// single seeded stream.
pub struct Initializer {
    rng: ChaCha20Rng,
}

impl Initializer {
    pub fn new(seed: u64) -> Self {
        Initializer {
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// Glorot-uniform matrix of `rows`×`cols`.
    pub fn glorot(&mut self, rows: usize, cols: usize) -> Vec<f64> {
        let bound = (6.0 / (rows + cols) as f64).sqrt();
        (0..rows * cols)
            .map(|_| self.rng.random_range(-bound..bound))
            .collect()
    }

    /// Glorot-uniform vector, treated as a 1×n matrix.
    pub fn vector(&mut self, n: usize) -> Vec<f64> {
        self.glorot(1, n)
    }

    pub fn zeros(&mut self, n: usize) -> Vec<f64> {
        vec![0.0; n]
    }

    /// Bias vector with every entry set to `v` (forget gates start at +1).
    pub fn constant(&mut self, n: usize, v: f64) -> Vec<f64> {
        vec![v; n]
    }
}
