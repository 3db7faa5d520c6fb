//! Seeded randomness for the searches that need a generic choice.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{int, Scalar};

/// Seed used when the caller does not pass one.
pub const DEFAULT_SEED: u64 = 20_251_016;

/// Deterministic generator for `seed`.
#[must_use]
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer scalar drawn uniformly from `[-bound, bound]`.
pub fn small_scalar(rng: &mut impl Rng, bound: i64) -> Scalar {
    int(rng.gen_range(-bound..=bound))
}

/// Vector of `len` small integer scalars.
pub fn small_vector(rng: &mut impl Rng, len: usize, bound: i64) -> Vec<Scalar> {
    (0..len).map(|_| small_scalar(rng, bound)).collect()
}
