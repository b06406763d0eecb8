//! Seeded random streams.
//!
//! Every randomized routine in the crate draws from a [`ChaCha8Rng`] built
//! here, so transcripts replay exactly from `(seed, index)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The splitmix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed used for retry number `attempt` of a Las-Vegas construction.
pub fn derive_seed(seed: u64, attempt: u64) -> u64 {
    splitmix64(seed.wrapping_add(attempt))
}

/// Generator for a single seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The `index`-th independent stream of the family keyed by `seed`.
///
/// Streams with distinct indices never overlap, so work split across
/// threads can take one stream per unit and stay schedule-independent.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
