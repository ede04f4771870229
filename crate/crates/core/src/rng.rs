//! Seeded randomness for generators and property sampling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x0d9e_1ae5;

/// The seed from `DPGLUE_SEED`, falling back to [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("DPGLUE_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// A generator for one named stream, so separate suites do not share draws.
pub fn stream(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_from_env() ^ salt.rotate_left(17))
}
