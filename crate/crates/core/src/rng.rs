//! Seeding and bounded draws.
//!
//! All randomness flows through xoshiro256** (Blackman and Vigna), seeded by
//! expanding a 64-bit seed with SplitMix64. Bounded integers use Lemire's
//! multiply-and-reject method on raw 64-bit outputs, so results depend only on
//! those two published algorithms and are identical on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

pub type Rng = Xoshiro256StarStar;

pub fn rng_from_seed(seed: u64) -> Rng {
    Xoshiro256StarStar::seed_from_u64(seed)
}

/// SplitMix64 output function.
pub fn mix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed: `mix64(mix64(mix64(master) ^ m) ^ trial)`.
pub fn derive_seed(master: u64, m: u64, trial: u64) -> u64 {
    mix64(mix64(mix64(master) ^ m) ^ trial)
}

/// Uniform integer in `0..bound`.
pub fn below(rng: &mut Rng, bound: u64) -> u64 {
    assert!(bound > 0, "empty range");
    let mut wide = rng.next_u64() as u128 * bound as u128;
    let mut low = wide as u64;
    if low < bound {
        let threshold = bound.wrapping_neg() % bound;
        while low < threshold {
            wide = rng.next_u64() as u128 * bound as u128;
            low = wide as u64;
        }
    }
    (wide >> 64) as u64
}
