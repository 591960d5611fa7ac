//! Bit-level codecs and the archive container format.

pub mod archive;
pub mod bitpack;
pub mod simple8b;
