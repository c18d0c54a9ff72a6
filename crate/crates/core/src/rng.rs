//! Counter-based pseudo-random numbers.
//!
//! Every draw is a pure function of `(seed, stream, index)`: ChaCha8 keyed by
//! `seed`, with the ChaCha stream id selecting an independent sequence and the
//! word position selecting the draw. Any draw can be regenerated without
//! producing the ones before it, so trials can be evaluated in any order.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Name recorded in report provenance.
pub const GENERATOR_NAME: &str = "chacha8-counter";

const INV_2_53: f64 = 1.0 / (1u64 << 53) as f64;
const INV_2_52: f64 = 1.0 / (1u64 << 52) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CounterRng {
    seed: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn core(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// Raw 64-bit word `index` of `stream`.
    pub fn word_at(&self, stream: u64, index: u64) -> u64 {
        let mut rng = self.core(stream);
        rng.set_word_pos(2 * index as u128);
        rng.next_u64()
    }

    /// Sequential words of `stream`, identical to `word_at(stream, 0), word_at(stream, 1), ...`.
    pub fn words(&self, stream: u64) -> impl Iterator<Item = u64> {
        let mut rng = self.core(stream);
        std::iter::repeat_with(move || rng.next_u64())
    }

    /// Uniform draws on `[0, 1)` with 53 random bits.
    pub fn uniforms(&self, stream: u64) -> impl Iterator<Item = f64> {
        self.words(stream).map(half_open)
    }

    /// Uniform draws on the open interval `(0, 1)`.
    pub fn open_uniforms(&self, stream: u64) -> impl Iterator<Item = f64> {
        self.words(stream).map(open)
    }
}

#[inline]
pub fn half_open(word: u64) -> f64 {
    (word >> 11) as f64 * INV_2_53
}

/// Midpoints of a 2^-52 grid, so neither 0 nor 1 is reachable.
#[inline]
pub fn open(word: u64) -> f64 {
    ((word >> 12) as f64 + 0.5) * INV_2_52
}
