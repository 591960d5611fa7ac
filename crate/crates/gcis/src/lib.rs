//! Lossless grammar compression built on induced suffix sorting.
//!
//! The compressor factors a text into the substrings between its
//! leftmost-S positions, sorts those factors with one induction pass,
//! names equal factors with one symbol and recurses on the sequence of
//! names. Each round emits a dictionary of front-coded rule bodies; the
//! rounds stop when naming cannot shrink the text further or would cost
//! more than it saves. The archive stores the dictionaries plus the last
//! reduced text, and decompression replays the naming in reverse, level
//! by level — no suffix structures are needed to decode.
//!
//! ```
//! let archive = gcis::compress(b"how much wood would a woodchuck chuck");
//! assert_eq!(
//!     gcis::decompress(&archive).unwrap(),
//!     b"how much wood would a woodchuck chuck"
//! );
//! ```
//!
//! The pieces are public for inspection and testing: [`text`] defines the
//! sentinel-terminated symbol sequences all stages share, [`classify`]
//! the factorization and induced sort, [`grammar`] the round driver,
//! [`codec`] the bit-level formats, [`decode`] the expansion side, and
//! [`corpus`] deterministic input generators.

pub mod classify;
pub mod codec;
pub mod corpus;
pub mod decode;
mod error;
pub mod grammar;
pub mod text;

pub use codec::archive::{deserialize, serialize, symbol_width};
pub use decode::{
    decompress, decompress_with_stats, expand, expand_level, expand_levels, expand_rules,
    BoundaryIndex, DecodeStats, ExpandedDictionary, LevelStat,
};
pub use error::Error;
pub use grammar::{
    build_grammar, build_grammar_with, naming_offset, reduce_once, BuildOptions, Grammar,
    LevelDictionary, Rule,
};
pub use text::{Symbol, Text, BYTE_ALPHABET, SENTINEL};

/// Compresses `data` into a self-contained archive with default options.
pub fn compress(data: &[u8]) -> Vec<u8> {
    compress_with(data, &BuildOptions::default())
}

/// Compresses `data` with explicit build options.
pub fn compress_with(data: &[u8], opts: &BuildOptions) -> Vec<u8> {
    let g = build_grammar_with(&Text::from_bytes(data), opts);
    serialize(&g).expect("freshly built grammars always serialize")
}
