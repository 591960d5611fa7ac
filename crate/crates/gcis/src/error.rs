use std::error;
use std::fmt;

/// Errors shared by the text model, the codecs and the decoder.
///
/// Archive validation failures each get their own variant so callers can
/// distinguish "this file is not one of ours" (`BadMagic`) from "written by a
/// newer build" (`UnsupportedVersion`) from plain corruption.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input does not start with the `GCIS` magic bytes.
    BadMagic,
    /// The archive declares a format version this build cannot read.
    UnsupportedVersion(u8),
    /// The input ended before a complete structure could be read.
    Truncated,
    /// Bytes remain after the archive's last block.
    TrailingData { extra: usize },
    /// The value cannot be stored in a 60-bit Simple8b payload.
    UnencodableValue(u64),
    /// The value does not fit the fixed bit width it was to be packed at.
    ValueTooWide { value: u64, width: u32 },
    /// A text symbol breaks the sentinel or alphabet rules.
    MalformedText { position: usize, symbol: u32 },
    /// A symbol refers past the end of the alphabet or dictionary it indexes.
    SymbolOutOfRange { symbol: u32, limit: u32 },
    /// A front-coded rule shares more symbols than its predecessor holds.
    RulePrefixOverrun {
        rule: usize,
        lcp: usize,
        available: usize,
    },
    /// The tail stream holds a different number of symbols than the tail
    /// lengths announce.
    TailSymbolsMismatch { expected: u64, actual: u64 },
    /// The decoded text length disagrees with the archive header.
    LengthMismatch { expected: u64, actual: u64 },
    /// A structural cross-check failed; the archive cannot be trusted.
    Corrupt { detail: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadMagic => write!(f, "not a gcis archive (bad magic bytes)"),
            Error::UnsupportedVersion(v) => {
                write!(f, "unsupported archive version {v}")
            }
            Error::Truncated => write!(f, "archive truncated"),
            Error::TrailingData { extra } => {
                write!(f, "{extra} trailing byte(s) after end of archive")
            }
            Error::UnencodableValue(v) => {
                write!(f, "value {v} exceeds the Simple8b 60-bit payload limit")
            }
            Error::ValueTooWide { value, width } => {
                write!(f, "value {value} does not fit in {width} bit(s)")
            }
            Error::MalformedText { position, symbol } => {
                write!(f, "malformed text: symbol {symbol} at position {position}")
            }
            Error::SymbolOutOfRange { symbol, limit } => {
                write!(f, "symbol {symbol} out of range (limit {limit})")
            }
            Error::RulePrefixOverrun {
                rule,
                lcp,
                available,
            } => write!(
                f,
                "rule {rule} shares {lcp} symbol(s) but its predecessor has only {available}"
            ),
            Error::TailSymbolsMismatch { expected, actual } => write!(
                f,
                "tail stream length mismatch: lengths sum to {expected}, stream holds {actual}"
            ),
            Error::LengthMismatch { expected, actual } => write!(
                f,
                "decoded length {actual} disagrees with header length {expected}"
            ),
            Error::Corrupt { detail } => write!(f, "corrupt archive: {detail}"),
        }
    }
}

impl error::Error for Error {}

impl Error {
    /// True for variants that indicate an unreadable or untrustworthy
    /// archive, as opposed to misuse of the encoding API.
    pub fn is_corrupt_archive(&self) -> bool {
        !matches!(
            self,
            Error::UnencodableValue(_) | Error::ValueTooWide { .. }
        )
    }
}
