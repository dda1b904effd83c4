//! Uniform/normal generator contract consumed by every sampler.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

/// Seed used by the command-line tools when none is given.
pub const DEFAULT_SEED: u64 = 20210520;

/// A source of uniform and standard normal variates.
///
/// Samplers only ever borrow the source mutably, so independent streams are
/// needed for concurrent sampling.
pub trait RandomSource {
    /// Uniform on the open interval (0, 1).
    fn uniform(&mut self) -> f64;
    /// Standard normal.
    fn normal(&mut self) -> f64;
}

impl<R: Rng> RandomSource for R {
    fn uniform(&mut self) -> f64 {
        loop {
            let u: f64 = self.random();
            if u > 0.0 {
                return u;
            }
        }
    }

    fn normal(&mut self) -> f64 {
        self.sample(StandardNormal)
    }
}

/// Seeded, platform-independent generator.
pub fn seeded(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}
