//! Seeded deterministic randomness.
//!
//! Every random choice in the crate draws from ChaCha8 seeded through
//! `rand_chacha`'s `seed_from_u64`. Independent streams for the same seed are
//! obtained with [`split`], which selects a ChaCha stream id, so parallel
//! workers never share state.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GameRng = ChaCha8Rng;

/// Identifier recorded in experiment output.
pub const RNG_ALGORITHM: &str = "chacha8/rand_chacha-0.3/seed_from_u64";

pub fn seeded(seed: u64) -> GameRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Stream `stream` of the generator seeded with `seed`. Stream 0 is the same
/// sequence as [`seeded`].
pub fn split(seed: u64, stream: u64) -> GameRng {
    let mut rng = seeded(seed);
    rng.set_stream(stream);
    rng
}
