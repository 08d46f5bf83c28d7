//! Seeded small-height rational sampling.
//!
//! Every random draw in the crate goes through [`Sampler`]: a ChaCha8 stream
//! seeded with the caller's `u64`. A rational is `a/b` with `a` uniform in
//! `-4..=4` and `b` uniform in `1..=3`, so all oracles stay cheap and are
//! replayable from the seed alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Scalar;

pub const NUMERATOR_BOUND: i64 = 4;
pub const DENOMINATOR_BOUND: i64 = 3;

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rational<S: Scalar>(&mut self) -> S {
        let a = self.rng.gen_range(-NUMERATOR_BOUND..=NUMERATOR_BOUND);
        let b = self.rng.gen_range(1..=DENOMINATOR_BOUND);
        S::from_frac(a, b)
    }

    pub fn vector<S: Scalar>(&mut self, dim: usize) -> Vec<S> {
        (0..dim).map(|_| self.rational()).collect()
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}
