//! Seeded, splittable random streams.
//!
//! Every random construction in the crate draws from ChaCha8 keyed by a
//! 64-bit seed and positioned on a 64-bit stream. The pair fully determines
//! the output on every platform, so replicas parallelise by stream index
//! without changing what they sample.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        RngSeed { seed, stream: 0 }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        RngSeed { stream, ..self }
    }

    /// Same seed, stream shifted by `offset`.
    pub fn substream(self, offset: u64) -> Self {
        RngSeed {
            stream: self.stream.wrapping_add(offset),
            ..self
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}
