//! Seedable randomness with independent substreams.
//!
//! Every stochastic operation in this crate draws from ChaCha8 (the
//! [`rand_chacha::ChaCha8Rng`] generator) keyed by a caller-supplied 64-bit
//! seed. Independent tasks inside one run — benchmark pairs, lab
//! repetitions — draw from [`substream`], which maps a task index onto a
//! distinct ChaCha stream. Streams of the same key never overlap, so results
//! are reproducible and independent of how tasks are scheduled.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the crate.
pub type Prng = ChaCha8Rng;

/// Returns the root generator for `seed` (stream 0).
pub fn master(seed: u64) -> Prng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Returns an independent generator for task `index` under `seed`.
pub fn substream(seed: u64, index: u64) -> Prng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
