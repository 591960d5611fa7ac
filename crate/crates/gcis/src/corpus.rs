//! Deterministic test-corpus generators.
//!
//! Three families with very different compressibility:
//!
//! * Fibonacci words — `S(1) = "a"`, `S(2) = "ab"`, `S(k) = S(k-1) S(k-2)`
//!   — highly repetitive, the best case for grammar compression;
//! * Thue–Morse words — symbol `i` is `'a' + popcount(i) % 2` — repetitive
//!   but overlap-free;
//! * seeded uniform noise — the worst case, essentially incompressible.
//!
//! Everything here is reproducible: the same parameters always produce the
//! same bytes, so sizes and ratios can be asserted exactly.

use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Refusing to build a corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusError {
    /// The requested length exceeds [`MAX_CORPUS_LEN`].
    TooLarge { requested: u128, cap: usize },
    /// Random corpora need an alphabet of 1..=256 byte values.
    InvalidAlphabet { sigma: u32 },
    /// Indexed families start at 1.
    InvalidIndex,
}

impl fmt::Display for CorpusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusError::TooLarge { requested, cap } => {
                write!(f, "corpus of {requested} bytes exceeds the cap of {cap}")
            }
            CorpusError::InvalidAlphabet { sigma } => {
                write!(f, "random corpus alphabet {sigma} outside 1..=256")
            }
            CorpusError::InvalidIndex => write!(f, "corpus indices start at 1"),
        }
    }
}

impl std::error::Error for CorpusError {}

/// Hard cap on generated corpus length: 256 MiB.
pub const MAX_CORPUS_LEN: usize = 1 << 28;

/// The k-th Fibonacci word over `{a, b}`.
pub fn gen_fibonacci(k: u32) -> Result<Vec<u8>, CorpusError> {
    if k == 0 {
        return Err(CorpusError::InvalidIndex);
    }
    // Work out the final length first so an oversized request fails before
    // any allocation.
    let (mut len_prev, mut len_cur) = (1u128, 2u128);
    for _ in 3..=k {
        let next = len_cur + len_prev;
        len_prev = len_cur;
        len_cur = next;
    }
    let len = if k == 1 { len_prev } else { len_cur };
    if len > MAX_CORPUS_LEN as u128 {
        return Err(CorpusError::TooLarge {
            requested: len,
            cap: MAX_CORPUS_LEN,
        });
    }

    let (mut prev, mut cur) = (b"a".to_vec(), b"ab".to_vec());
    if k == 1 {
        return Ok(prev);
    }
    for _ in 3..=k {
        let mut next = Vec::with_capacity(cur.len() + prev.len());
        next.extend_from_slice(&cur);
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// The first `n` symbols of the Thue–Morse word over `{a, b}`.
pub fn gen_thue_morse(n: usize) -> Result<Vec<u8>, CorpusError> {
    if n > MAX_CORPUS_LEN {
        return Err(CorpusError::TooLarge {
            requested: n as u128,
            cap: MAX_CORPUS_LEN,
        });
    }
    Ok((0..n).map(|i| b'a' + (i.count_ones() % 2) as u8).collect())
}

/// `n` bytes drawn uniformly from `0..sigma` with a seeded ChaCha8 stream.
///
/// Each byte is `next_u32() % sigma`, one draw per byte, so output depends
/// only on `(n, sigma, seed)`.
pub fn gen_random(n: usize, sigma: u32, seed: u64) -> Result<Vec<u8>, CorpusError> {
    if !(1..=256).contains(&sigma) {
        return Err(CorpusError::InvalidAlphabet { sigma });
    }
    if n > MAX_CORPUS_LEN {
        return Err(CorpusError::TooLarge {
            requested: n as u128,
            cap: MAX_CORPUS_LEN,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..n).map(|_| (rng.next_u32() % sigma) as u8).collect())
}
