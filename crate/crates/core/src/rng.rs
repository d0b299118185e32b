//! Seeded random streams. Each replication owns an independent ChaCha20 stream
//! per purpose, so results do not depend on scheduling or worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub const GENERATOR_NAME: &str = "ChaCha20";

/// What a stream is used for within one replication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purpose {
    GroundTruth = 0,
    Schedule = 1,
    Responses = 2,
    Selection = 3,
}

const PURPOSES: u64 = 4;

/// The stream for `(seed, replication, purpose)`.
pub fn stream(seed: u64, rep: u64, purpose: Purpose) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(rep * PURPOSES + purpose as u64);
    rng
}
