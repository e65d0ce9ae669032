//! Seeded random streams.
//!
//! Every stochastic routine takes an explicit `u64` seed. Independent
//! sub-streams (per sweep task, per k-means restart, ...) are derived with
//! [`derive_seed`] so results never depend on scheduling or worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// SplitMix64 finalizer over `(seed, stream)`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng as _;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = rng_from_seed(derive_seed(7, 1)).random();
        let b: u64 = rng_from_seed(derive_seed(7, 1)).random();
        let c: u64 = rng_from_seed(derive_seed(7, 2)).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
