//! Seeded randomness for scenario setup.
//!
//! A single xoshiro256** stream drives initial placement. The generator,
//! the 64-bit seeding expansion, and the 53-bit float conversion are all
//! pinned here so a seed reproduces the exact same world on any platform.

use rand_xoshiro::rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

pub type Rng = Xoshiro256StarStar;

/// Stream for one scenario: xoshiro256** with SplitMix64 seed expansion.
pub fn seeded(seed: u64) -> Rng {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// Uniform draw in [0, 1): the top 53 bits of the next u64, scaled. Exactly
/// representable, so downstream arithmetic is reproducible bit-for-bit.
pub fn u01(rng: &mut Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * 2f64.powi(-53)
}
