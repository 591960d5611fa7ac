//! The on-disk archive format.
//!
//! All integers are little-endian. An archive is:
//!
//! ```text
//! "GCIS"            magic, 4 bytes
//! version           u8, currently 1
//! original_len      u64, byte length of the uncompressed input
//! level_count       u16
//! final text block
//! level blocks, highest level first
//! ```
//!
//! The final text block stores the symbols left when reduction stopped:
//!
//! ```text
//! count             u64, symbols stored (the sentinel is not)
//! alphabet_size     u64
//! symbols           count fields of symbol_width(alphabet_size) bits,
//!                   each stored as value - 1
//! ```
//!
//! Each level block stores one dictionary:
//!
//! ```text
//! sigma             u64, number of rules
//! rhs_alphabet_size u64, alphabet the rule bodies are written in
//! prefix_len        u64, symbols in the prefix rule
//! L                 u64 word count, then that many Simple8b words;
//!                   decodes to sigma shared-prefix lengths
//! S                 u64 word count, then Simple8b words; decodes to
//!                   sigma tail lengths
//! R                 u64 symbol count, then the concatenated rule tails
//!                   as fixed-width fields, each stored as value - 1
//! prefix rule       prefix_len fixed-width fields, each value - 1
//! ```
//!
//! Symbols are stored shifted down by one because the sentinel (0) never
//! appears in stored sequences; the shift buys e.g. 8-bit fields for the
//! byte alphabet of 257.

use crate::codec::bitpack::{pack_fixed, words_for, PackedIntArray};
use crate::codec::simple8b::{s8b_decode, s8b_encode, Simple8bWord};
use crate::error::Error;
use crate::grammar::{Grammar, LevelDictionary, Rule};
use crate::text::{Symbol, Text, BYTE_ALPHABET, SENTINEL};

const MAGIC: &[u8; 4] = b"GCIS";
const VERSION: u8 = 1;

/// Bit width of a stored symbol for the given alphabet.
///
/// Stored values range over `0..=alphabet_size - 2` (symbols shifted down
/// by one, the sentinel never stored), and a field is at least one bit.
pub fn symbol_width(alphabet_size: u32) -> u32 {
    (32 - alphabet_size.saturating_sub(2).leading_zeros()).max(1)
}

pub(crate) struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub(crate) fn new() -> Writer {
        Writer { buf: Vec::new() }
    }

    pub(crate) fn into_bytes(self) -> Vec<u8> {
        self.buf
    }

    pub(crate) fn put_u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub(crate) fn put_u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub(crate) fn put_u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub(crate) fn put_bytes(&mut self, bytes: &[u8]) {
        self.buf.extend_from_slice(bytes);
    }

    pub(crate) fn put_words(&mut self, words: &[u64]) {
        for &w in words {
            self.put_u64(w);
        }
    }
}

pub(crate) struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub(crate) fn new(bytes: &'a [u8]) -> Reader<'a> {
        Reader { bytes, pos: 0 }
    }

    pub(crate) fn remaining(&self) -> usize {
        self.bytes.len() - self.pos
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], Error> {
        if n > self.remaining() {
            return Err(Error::Truncated);
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u8(&mut self) -> Result<u8, Error> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, Error> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, Error> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    /// Reads `count` words, checking the byte budget before allocating so a
    /// corrupt count cannot trigger a huge allocation.
    fn words(&mut self, count: u64) -> Result<Vec<u64>, Error> {
        let bytes = count.checked_mul(8).ok_or(Error::Truncated)?;
        if bytes > self.remaining() as u64 {
            return Err(Error::Truncated);
        }
        (0..count).map(|_| self.u64()).collect()
    }
}

/// Encodes one dictionary as a level block.
pub fn encode_level(d: &LevelDictionary) -> Result<Vec<u8>, Error> {
    let mut w = Writer::new();
    w.put_u64(d.sigma as u64);
    w.put_u64(d.rhs_alphabet_size as u64);
    w.put_u64(d.prefix_rule.len() as u64);

    let lcps: Vec<u64> = d.rules.iter().map(|r| r.lcp as u64).collect();
    let tail_lens: Vec<u64> = d.rules.iter().map(|r| r.tail.len() as u64).collect();
    for seq in [&lcps, &tail_lens] {
        let words = s8b_encode(seq)?;
        w.put_u64(words.len() as u64);
        for word in words {
            w.put_u64(word.0);
        }
    }

    let width = symbol_width(d.rhs_alphabet_size);
    let shift = |s: &Symbol| {
        debug_assert_ne!(*s, SENTINEL, "stored symbols are never the sentinel");
        (*s - 1) as u64
    };
    let tails: Vec<u64> = d
        .rules
        .iter()
        .flat_map(|r| r.tail.iter().map(shift))
        .collect();
    w.put_u64(tails.len() as u64);
    w.put_words(&pack_fixed(&tails, width)?.words);
    let prefix: Vec<u64> = d.prefix_rule.iter().map(shift).collect();
    w.put_words(&pack_fixed(&prefix, width)?.words);
    Ok(w.into_bytes())
}

/// Decodes one level block; `level` tags the result (the wire format does
/// not store level numbers, their order in the archive implies them).
pub fn decode_level(bytes: &[u8], level: u32) -> Result<LevelDictionary, Error> {
    let mut r = Reader::new(bytes);
    let dict = decode_level_from(&mut r, level)?;
    if r.remaining() > 0 {
        return Err(Error::TrailingData {
            extra: r.remaining(),
        });
    }
    Ok(dict)
}

fn decode_level_from(r: &mut Reader, level: u32) -> Result<LevelDictionary, Error> {
    let sigma = u32::try_from(r.u64()?).map_err(|_| Error::Corrupt {
        detail: "rule count does not fit 32 bits",
    })?;
    let rhs_alphabet_size = u32::try_from(r.u64()?).map_err(|_| Error::Corrupt {
        detail: "dictionary alphabet does not fit 32 bits",
    })?;
    if rhs_alphabet_size < 2 {
        return Err(Error::Corrupt {
            detail: "dictionary alphabet holds no symbols",
        });
    }
    let prefix_len = r.u64()?;

    let l_word_count = r.u64()?;
    let l_words = r.words(l_word_count)?;
    let lcps = decode_s8b_words(&l_words, sigma as usize)?;
    let s_word_count = r.u64()?;
    let s_words = r.words(s_word_count)?;
    let tail_lens = decode_s8b_words(&s_words, sigma as usize)?;

    let tail_total: u128 = tail_lens.iter().map(|&v| v as u128).sum();
    let r_count = r.u64()?;
    if tail_total != r_count as u128 {
        return Err(Error::TailSymbolsMismatch {
            expected: tail_total.min(u64::MAX as u128) as u64,
            actual: r_count,
        });
    }

    let tails = read_symbols(r, r_count, rhs_alphabet_size)?;
    let prefix_rule = read_symbols(r, prefix_len, rhs_alphabet_size)?;

    let mut rules = Vec::with_capacity(sigma as usize);
    let mut cursor = 0usize;
    for i in 0..sigma as usize {
        let lcp = lcps[i] as usize;
        let len = tail_lens[i] as usize;
        rules.push(Rule {
            lcp,
            tail: tails[cursor..cursor + len].to_vec(),
        });
        cursor += len;
    }
    Ok(LevelDictionary {
        level,
        sigma,
        rules,
        prefix_rule,
        rhs_alphabet_size,
    })
}

fn decode_s8b_words(raw: &[u64], count: usize) -> Result<Vec<u64>, Error> {
    let words: Vec<Simple8bWord> = raw.iter().map(|&w| Simple8bWord(w)).collect();
    s8b_decode(&words, count)
}

/// Reads `count` fixed-width fields and undoes the value - 1 shift,
/// rejecting symbols the alphabet does not contain.
fn read_symbols(r: &mut Reader, count: u64, alphabet_size: u32) -> Result<Vec<Symbol>, Error> {
    let count = usize::try_from(count).map_err(|_| Error::Truncated)?;
    let width = symbol_width(alphabet_size);
    let words = r.words(words_for(count, width) as u64)?;
    let packed = PackedIntArray {
        words,
        width,
        count,
    };
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let stored = packed.get(i);
        if stored > (alphabet_size - 2) as u64 {
            return Err(Error::SymbolOutOfRange {
                symbol: (stored + 1).min(u32::MAX as u64) as u32,
                limit: alphabet_size,
            });
        }
        out.push(stored as Symbol + 1);
    }
    Ok(out)
}

/// Serializes a grammar into a standalone archive.
pub fn serialize(g: &Grammar) -> Result<Vec<u8>, Error> {
    debug_assert!(g.levels.len() <= u16::MAX as usize);
    let mut w = Writer::new();
    w.put_bytes(MAGIC);
    w.put_u8(VERSION);
    w.put_u64(g.original_len as u64);
    w.put_u16(g.levels.len() as u16);

    let symbols = g.final_text.symbols();
    let count = symbols.len() - 1;
    let alphabet = g.final_text.alphabet_size();
    w.put_u64(count as u64);
    w.put_u64(alphabet as u64);
    let values: Vec<u64> = symbols[..count]
        .iter()
        .map(|&s| {
            debug_assert_ne!(s, SENTINEL);
            (s - 1) as u64
        })
        .collect();
    w.put_words(&pack_fixed(&values, symbol_width(alphabet))?.words);

    for d in g.levels.iter().rev() {
        w.put_bytes(&encode_level(d)?);
    }
    Ok(w.into_bytes())
}

/// Parses an archive back into a grammar, validating structure as it goes.
pub fn deserialize(bytes: &[u8]) -> Result<Grammar, Error> {
    let mut r = Reader::new(bytes);
    if r.take(4)? != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = r.u8()?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let original_len = usize::try_from(r.u64()?).map_err(|_| Error::Corrupt {
        detail: "original length does not fit this platform",
    })?;
    let level_count = r.u16()?;

    let count = r.u64()?;
    let alphabet = u32::try_from(r.u64()?).map_err(|_| Error::Corrupt {
        detail: "final text alphabet does not fit 32 bits",
    })?;
    if alphabet < 2 {
        return Err(Error::Corrupt {
            detail: "final text alphabet holds no symbols",
        });
    }
    let mut symbols = read_symbols(&mut r, count, alphabet)?;
    symbols.push(SENTINEL);
    let final_text = Text::from_parts(symbols, alphabet, level_count as u32)?;

    let mut levels = Vec::with_capacity(level_count as usize);
    for level in (1..=level_count as u32).rev() {
        levels.push(decode_level_from(&mut r, level)?);
    }
    levels.reverse();

    if r.remaining() > 0 {
        return Err(Error::TrailingData {
            extra: r.remaining(),
        });
    }

    // The alphabets must chain: each dictionary writes its bodies in the
    // alphabet produced by the level below, the bottom level in the byte
    // alphabet, and the final text in the top level's name alphabet.
    let mut expected = BYTE_ALPHABET;
    for d in &levels {
        if d.rhs_alphabet_size != expected {
            return Err(Error::Corrupt {
                detail: "dictionary alphabet chain broken",
            });
        }
        expected = d.sigma + 1;
    }
    if final_text.alphabet_size() != expected {
        return Err(Error::Corrupt {
            detail: "final text alphabet does not match the dictionary chain",
        });
    }

    Ok(Grammar {
        levels,
        final_text,
        original_len,
    })
}
