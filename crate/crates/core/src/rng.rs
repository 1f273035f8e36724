//! Deterministic random source used by every sampler in the crate.
//!
//! The generator is SplitMix64 (state += 0x9e3779b97f4a7c15, Stafford "Mix13"
//! finalizer) seeded with the raw 64-bit seed. Floats are produced as
//! `(next_u64 >> 11) * 2^-53` and indices as `(next_u64 as u128 * n) >> 64`,
//! so any implementation of SplitMix64 reproduces the same samples.

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

/// Description of the generator, embedded in every report header.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorInfo {
    pub name: String,
    pub increment: String,
    pub float_conversion: String,
    pub index_conversion: String,
    pub seed: u64,
}

pub struct DetRng {
    seed: u64,
    inner: SplitMix64,
}

impl DetRng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn info(&self) -> GeneratorInfo {
        generator_info(self.seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in [0, 1).
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi].
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        let v = lo + (hi - lo) * self.unit();
        v.clamp(lo, hi)
    }

    /// Uniform index in 0..n. Panics if n == 0.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index range must be non-empty");
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    /// Standard normal deviate by Box-Muller (one value per call).
    pub fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.unit();
        let u2 = self.unit();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }
}

pub fn generator_info(seed: u64) -> GeneratorInfo {
    GeneratorInfo {
        name: "splitmix64".to_string(),
        increment: "0x9e3779b97f4a7c15".to_string(),
        float_conversion: "(next_u64 >> 11) * 2^-53".to_string(),
        index_conversion: "(next_u64 * n) >> 64".to_string(),
        seed,
    }
}
