//! Seeded, splittable randomness.
//!
//! Every consumer draws from its own ChaCha8 stream, selected by a
//! `(purpose, index)` key, so adding draws to one stream never perturbs
//! another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Name recorded in provenance metadata.
pub const GENERATOR_NAME: &str = "chacha8";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u32)]
pub enum Purpose {
    PermutationSelector = 1,
    LevelShift = 2,
    ChannelNoise = 3,
    SequenceChoice = 4,
    ScheduleOffset = 5,
    Workload = 6,
}

/// Independent stream for `(purpose, index)` under `seed`.
pub fn substream(seed: u64, purpose: Purpose, index: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((purpose as u64) << 32) | index as u64);
    rng
}
