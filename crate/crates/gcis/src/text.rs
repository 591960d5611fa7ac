//! The text model shared by every compression level.
//!
//! A [`Text`] is a symbol sequence terminated by a sentinel that is strictly
//! smaller than every other symbol. Input bytes `b` are mapped to `b + 1` so
//! the value `0` is free for the sentinel; the byte-level alphabet size is
//! therefore 257. Reduced strings produced by factorization reuse the same
//! type with `level > 0`: their symbols are rule names in `1..=sigma`, the
//! sentinel is appended again, and the alphabet size is `sigma + 1`.

use crate::error::Error;

/// One text symbol. `0` is reserved for the sentinel at every level.
pub type Symbol = u32;

/// The terminator appended to every level's text.
pub const SENTINEL: Symbol = 0;

/// Alphabet size of a byte-level text: 256 shifted byte values plus the
/// sentinel.
pub const BYTE_ALPHABET: u32 = 257;

/// A sentinel-terminated symbol sequence at some compression level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<Symbol>,
    alphabet_size: u32,
    level: u32,
}

impl Text {
    /// Builds the level-0 text for a byte string: every byte is shifted up by
    /// one and the sentinel is appended.
    ///
    /// ```
    /// let t = gcis::Text::from_bytes(b"ab");
    /// assert_eq!(t.symbols(), &[98, 99, 0]);
    /// ```
    pub fn from_bytes(data: &[u8]) -> Text {
        let mut symbols = Vec::with_capacity(data.len() + 1);
        symbols.extend(data.iter().map(|&b| b as Symbol + 1));
        symbols.push(SENTINEL);
        Text {
            symbols,
            alphabet_size: BYTE_ALPHABET,
            level: 0,
        }
    }

    /// Builds a text from raw parts, validating the sentinel and alphabet
    /// rules: the final symbol is the only `0`, and every symbol is below
    /// `alphabet_size`.
    pub fn from_parts(symbols: Vec<Symbol>, alphabet_size: u32, level: u32) -> Result<Text, Error> {
        if symbols.is_empty() {
            return Err(Error::Corrupt {
                detail: "a text must contain at least the sentinel",
            });
        }
        let last = symbols.len() - 1;
        for (i, &s) in symbols.iter().enumerate() {
            if (s == SENTINEL) != (i == last) || s >= alphabet_size {
                return Err(Error::MalformedText {
                    position: i,
                    symbol: s,
                });
            }
        }
        Ok(Text {
            symbols,
            alphabet_size,
            level,
        })
    }

    /// Same as [`Text::from_parts`] for callers that established the
    /// invariants themselves (validated decoding, fresh factorization).
    pub(crate) fn from_parts_unchecked(
        symbols: Vec<Symbol>,
        alphabet_size: u32,
        level: u32,
    ) -> Text {
        debug_assert_eq!(symbols.last(), Some(&SENTINEL));
        debug_assert!(symbols[..symbols.len() - 1]
            .iter()
            .all(|&s| s != SENTINEL && s < alphabet_size));
        Text {
            symbols,
            alphabet_size,
            level,
        }
    }

    /// Recovers the byte string of a level-0 text, dropping the sentinel.
    ///
    /// Fails when a symbol is out of byte range or a sentinel appears before
    /// the end, which can only happen for hand-built texts.
    pub fn to_bytes(&self) -> Result<Vec<u8>, Error> {
        debug_assert_eq!(self.level, 0, "to_bytes expects a byte-level text");
        let last = self.symbols.len() - 1;
        if self.symbols[last] != SENTINEL {
            return Err(Error::MalformedText {
                position: last,
                symbol: self.symbols[last],
            });
        }
        let mut bytes = Vec::with_capacity(last);
        for (i, &s) in self.symbols[..last].iter().enumerate() {
            if s == SENTINEL || s > 256 {
                return Err(Error::MalformedText {
                    position: i,
                    symbol: s,
                });
            }
            bytes.push((s - 1) as u8);
        }
        Ok(bytes)
    }

    /// All symbols, sentinel included.
    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// Number of symbols including the sentinel; always at least 1.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Symbol values live in `0..alphabet_size`.
    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    /// 0 for byte-level texts, `j` for the output of `j` reduction rounds.
    pub fn level(&self) -> u32 {
        self.level
    }
}
