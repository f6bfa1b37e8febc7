//! Deterministic per-record random streams.
//!
//! Every randomised stage derives one RNG per record from a master seed and
//! a stable record key. Streams are independent of processing order and of
//! how work is sharded, which is what makes parallel runs reproducible.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// 64-bit FNV-1a. Stable across platforms and releases; used only for seed
/// derivation and token hashing, never for untrusted input.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Stable hash of a (token, speaker) pair, used by the stub synthesizer to
/// pick a per-token frequency.
pub fn stable_hash(text: &str, speaker_key: &str) -> u64 {
    let mut buf = Vec::with_capacity(text.len() + speaker_key.len() + 1);
    buf.extend_from_slice(text.as_bytes());
    buf.push(0);
    buf.extend_from_slice(speaker_key.as_bytes());
    fnv1a64(&buf)
}

/// Derives per-record RNG streams from a single master seed.
///
/// The same `(master_seed, record_key)` pair always yields an identical
/// draw sequence.
#[derive(Debug, Clone, Copy)]
pub struct Seeder {
    master_seed: u64,
}

impl Seeder {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    /// Per-record seed: FNV-1a over the master seed bytes followed by the
    /// record key bytes.
    pub fn record_seed(&self, record_key: &str) -> u64 {
        let mut buf = Vec::with_capacity(8 + record_key.len());
        buf.extend_from_slice(&self.master_seed.to_le_bytes());
        buf.extend_from_slice(record_key.as_bytes());
        fnv1a64(&buf)
    }

    /// A fresh RNG stream for one record.
    pub fn stream(&self, record_key: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.record_seed(record_key))
    }
}
