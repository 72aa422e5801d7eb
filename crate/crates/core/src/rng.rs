//! Seed handling. A root seed fans out to independent child streams by a
//! counter, so each trial's randomness is reproducible on its own.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A generator for stream `stream` under `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Counter-based splitter for a single root seed.
#[derive(Clone, Copy, Debug)]
pub struct SeedSplitter {
    root: u64,
}

impl SeedSplitter {
    pub fn new(root: u64) -> Self {
        Self { root }
    }

    /// Child seed number `counter`; distinct counters give unrelated seeds.
    pub fn child(&self, counter: u64) -> u64 {
        use rand::RngCore;
        stream_rng(self.root, counter).next_u64()
    }

    pub fn rng(&self, counter: u64) -> ChaCha8Rng {
        stream_rng(self.root, counter)
    }
}
