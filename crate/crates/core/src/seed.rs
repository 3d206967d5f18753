//! Labeled splitting of a single master seed into independent RNG streams.
//!
//! Every random stage (instance costs, uncertainty parameters, each MCO
//! replication, each evaluation set) draws from its own ChaCha8 stream whose
//! seed is derived from the parent seed and a label, so adding a stage never
//! shifts the draws of another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A node in the seed derivation tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedStream(u64);

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        SeedStream(splitmix64(seed ^ 0x48_53_43_50))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Derive a child stream; the label is hashed with FNV-1a.
    pub fn child(self, label: &str) -> Self {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.as_bytes() {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        SeedStream(splitmix64(self.0 ^ h))
    }

    pub fn index(self, i: u64) -> Self {
        SeedStream(splitmix64(self.0.wrapping_add(splitmix64(i.wrapping_add(1)))))
    }

    pub fn rng(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
