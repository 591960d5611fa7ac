//! Expansion of a grammar back into the text it compresses.
//!
//! Rule bodies are kept in their packed form and addressed through a
//! select-capable bitmap instead of materialized per rule: for rule bodies
//! of lengths `[0, 3, 2]` the bitmap is
//!
//! ```text
//! body      1   ana   an
//! bits      1  0001  001
//! position  1  2345  678
//! ```
//!
//! — each body contributes its symbols as zeros followed by a terminating
//! one. The position of the i-th one locates the end of body `i`, so body
//! starts and lengths fall out of two select queries. Expansion then walks
//! the reduced text top level down, replacing each name by its body.

use crate::codec::archive::{deserialize, encode_level, symbol_width};
use crate::codec::bitpack::PackedIntArray;
use crate::error::Error;
use crate::grammar::{Grammar, LevelDictionary};
use crate::text::{Symbol, Text, SENTINEL};

/// How many set bits sit between consecutive select samples.
const SAMPLE_EVERY: usize = 64;

/// A bitmap answering select-the-i-th-one queries, built from a sequence
/// of body lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryIndex {
    words: Vec<u64>,
    /// Total bits.
    len: usize,
    /// Total set bits, one per body.
    ones: usize,
    /// Zero-based position of set bit number `j * SAMPLE_EVERY + 1`.
    samples: Vec<usize>,
}

impl BoundaryIndex {
    /// Builds the bitmap for the given body lengths.
    pub fn from_lengths(lengths: &[usize]) -> BoundaryIndex {
        let bits: usize = lengths.iter().map(|&l| l + 1).sum();
        let mut words = vec![0u64; bits.div_ceil(64)];
        let mut samples = Vec::with_capacity(lengths.len() / SAMPLE_EVERY + 1);
        let mut pos = 0usize;
        for (i, &l) in lengths.iter().enumerate() {
            pos += l;
            if i % SAMPLE_EVERY == 0 {
                samples.push(pos);
            }
            words[pos / 64] |= 1u64 << (pos % 64);
            pos += 1;
        }
        BoundaryIndex {
            words,
            len: bits,
            ones: lengths.len(),
            samples,
        }
    }

    /// Total bits in the map.
    pub fn len(&self) -> usize {
        self.len
    }

    /// Whether the map holds no bodies at all.
    pub fn is_empty(&self) -> bool {
        self.ones == 0
    }

    /// One-based position of the `i`-th set bit; `select1(0)` is 0.
    pub fn select1(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        debug_assert!(i <= self.ones, "select1({i}) of {} ones", self.ones);
        let sample = (i - 1) / SAMPLE_EVERY;
        let pos = self.samples[sample];
        let mut need = i - (sample * SAMPLE_EVERY + 1);
        if need == 0 {
            return pos + 1;
        }
        // Resume just past the sampled bit and count set bits word by word.
        let mut w = pos / 64;
        let mut word = if pos % 64 == 63 {
            0
        } else {
            self.words[w] & !((1u64 << (pos % 64 + 1)) - 1)
        };
        loop {
            let here = word.count_ones() as usize;
            if here >= need {
                return w * 64 + nth_set_bit(word, need) + 1;
            }
            need -= here;
            w += 1;
            word = self.words[w];
        }
    }

    /// Start offset and length of body `name` in the flat body sequence.
    pub fn body_range(&self, name: Symbol) -> (usize, usize) {
        let i = name as usize;
        let before = self.select1(i - 1);
        let end = self.select1(i);
        (before - (i - 1), end - before - 1)
    }
}

/// Zero-based position of the `n`-th set bit of `word`; `n` starts at 1
/// and the bit must exist.
fn nth_set_bit(mut word: u64, n: usize) -> usize {
    for _ in 1..n {
        word &= word - 1;
    }
    word.trailing_zeros() as usize
}

/// A dictionary with its front-coding undone, ready for body lookups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedDictionary {
    /// All rule bodies back to back, symbols stored shifted down by one.
    pub bodies: PackedIntArray,
    /// Body boundaries for select-based range queries.
    pub boundaries: BoundaryIndex,
    /// Number of rules.
    pub sigma: u32,
    /// Alphabet the bodies are written in.
    pub rhs_alphabet_size: u32,
}

impl ExpandedDictionary {
    /// The body of `name`, one symbol at a time.
    pub fn body(&self, name: Symbol) -> impl Iterator<Item = Symbol> + '_ {
        let (start, len) = self.boundaries.body_range(name);
        (start..start + len).map(|i| self.bodies.get(i) as Symbol + 1)
    }
}

/// Undoes the front-coding of a dictionary: materializes every body into
/// one packed sequence by copying each shared prefix from the previous
/// body, then indexes the boundaries.
pub fn expand_rules(d: &LevelDictionary) -> Result<ExpandedDictionary, Error> {
    let mut lengths = Vec::with_capacity(d.rules.len());
    let mut prev_len = 0usize;
    let mut total = 0usize;
    for (i, rule) in d.rules.iter().enumerate() {
        if rule.lcp > prev_len {
            return Err(Error::RulePrefixOverrun {
                rule: i + 1,
                lcp: rule.lcp,
                available: prev_len,
            });
        }
        let len = rule
            .lcp
            .checked_add(rule.tail.len())
            .filter(|l| total.checked_add(*l).is_some())
            .ok_or(Error::Corrupt {
                detail: "dictionary bodies overflow the address space",
            })?;
        total += len;
        lengths.push(len);
        prev_len = len;
    }

    let width = symbol_width(d.rhs_alphabet_size);
    let mut bodies = PackedIntArray::zeroed(total, width);
    let mut start = 0usize;
    let mut prev_start = 0usize;
    for (rule, &len) in d.rules.iter().zip(&lengths) {
        for k in 0..rule.lcp {
            let v = bodies.get(prev_start + k);
            bodies.set(start + k, v);
        }
        for (k, &s) in rule.tail.iter().enumerate() {
            if s == SENTINEL || s >= d.rhs_alphabet_size {
                return Err(Error::SymbolOutOfRange {
                    symbol: s,
                    limit: d.rhs_alphabet_size,
                });
            }
            bodies.set(start + rule.lcp + k, (s - 1) as u64);
        }
        prev_start = start;
        start += len;
    }

    Ok(ExpandedDictionary {
        bodies,
        boundaries: BoundaryIndex::from_lengths(&lengths),
        sigma: d.sigma,
        rhs_alphabet_size: d.rhs_alphabet_size,
    })
}

/// Replaces every name of `reduced` by its body, rebuilding the text one
/// level further down.
pub fn expand_level(
    ed: &ExpandedDictionary,
    prefix_rule: &[Symbol],
    reduced: &Text,
) -> Result<Text, Error> {
    debug_assert!(reduced.level() >= 1, "byte-level texts expand no further");
    let names = &reduced.symbols()[..reduced.len() - 1];
    let mut out = Vec::with_capacity(prefix_rule.len() + 2 * names.len() + 1);
    out.extend_from_slice(prefix_rule);
    for &name in names {
        if name == SENTINEL || name > ed.sigma {
            return Err(Error::SymbolOutOfRange {
                symbol: name,
                limit: ed.sigma,
            });
        }
        out.extend(ed.body(name));
    }
    out.push(SENTINEL);
    Ok(Text::from_parts_unchecked(
        out,
        ed.rhs_alphabet_size,
        reduced.level() - 1,
    ))
}

/// Expands a grammar level by level down to the byte-level text, handing
/// each dictionary and the text it produced to `visit` on the way.
pub fn expand_levels(
    g: &Grammar,
    mut visit: impl FnMut(&LevelDictionary, &Text),
) -> Result<Text, Error> {
    debug_assert_eq!(g.final_text.level() as usize, g.levels.len());
    let mut current = g.final_text.clone();
    for d in g.levels.iter().rev() {
        let ed = expand_rules(d)?;
        current = expand_level(&ed, &d.prefix_rule, &current)?;
        // Every shared symbol of the front-coding stands for a position of
        // the text just rebuilt, so their total cannot exceed its length.
        let shared: u128 = d.rules.iter().map(|r| r.lcp as u128).sum();
        if shared > current.len() as u128 {
            return Err(Error::Corrupt {
                detail: "front-coding sharing exceeds the text length",
            });
        }
        visit(d, &current);
    }
    Ok(current)
}

/// Expands a grammar all the way back to the original bytes.
pub fn expand(g: &Grammar) -> Result<Vec<u8>, Error> {
    let text = expand_levels(g, |_, _| {})?;
    let bytes = text.to_bytes()?;
    if bytes.len() != g.original_len {
        return Err(Error::LengthMismatch {
            expected: g.original_len as u64,
            actual: bytes.len() as u64,
        });
    }
    Ok(bytes)
}

/// Decompresses an archive.
pub fn decompress(archive: &[u8]) -> Result<Vec<u8>, Error> {
    expand(&deserialize(archive)?)
}

/// Per-level decode measurements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStat {
    pub level: u32,
    /// Rules in this level's dictionary.
    pub sigma: u32,
    /// Symbols of the text this level rebuilds, sentinel not counted.
    pub text_len: usize,
    /// Bytes the level block occupies in the archive.
    pub encoded_bytes: usize,
}

/// What a decompression run did, for inspection output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeStats {
    pub original_len: usize,
    pub archive_len: usize,
    pub level_count: usize,
    /// Symbols stored verbatim at the top, sentinel not counted.
    pub final_text_len: usize,
    /// Bottom level first.
    pub levels: Vec<LevelStat>,
    /// Name-to-body substitutions performed.
    pub body_lookups: u64,
    /// Symbols written across all levels, sentinel not counted.
    pub symbols_written: u64,
}

/// Decompresses an archive and reports what the decoder did.
pub fn decompress_with_stats(archive: &[u8]) -> Result<(Vec<u8>, DecodeStats), Error> {
    let g = deserialize(archive)?;
    let mut levels: Vec<LevelStat> = Vec::with_capacity(g.levels.len());
    let mut body_lookups = 0u64;
    let mut symbols_written = 0u64;
    let mut names_pending = g.final_text.len() as u64 - 1;
    let text = expand_levels(&g, |d, expanded| {
        body_lookups += names_pending;
        symbols_written += expanded.len() as u64 - 1;
        names_pending = expanded.len() as u64 - 1;
        levels.push(LevelStat {
            level: d.level,
            sigma: d.sigma,
            text_len: expanded.len() - 1,
            encoded_bytes: 0,
        });
    })?;
    levels.reverse();
    for stat in &mut levels {
        let d = &g.levels[stat.level as usize - 1];
        stat.encoded_bytes = encode_level(d)?.len();
    }
    let bytes = text.to_bytes()?;
    if bytes.len() != g.original_len {
        return Err(Error::LengthMismatch {
            expected: g.original_len as u64,
            actual: bytes.len() as u64,
        });
    }
    let stats = DecodeStats {
        original_len: g.original_len,
        archive_len: archive.len(),
        level_count: g.levels.len(),
        final_text_len: g.final_text.len() - 1,
        levels,
        body_lookups,
        symbols_written,
    };
    Ok((bytes, stats))
}
