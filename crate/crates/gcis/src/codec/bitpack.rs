//! Fixed-width integer packing into 64-bit little-endian words.
//!
//! Values occupy contiguous bit fields: value `i` sits at bits
//! `[i*width, (i+1)*width)` of the word stream, low bits first, straddling
//! word boundaries where needed. The last word is zero-padded.

use crate::error::Error;

/// A packed sequence of `count` values, `width` bits each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedIntArray {
    pub words: Vec<u64>,
    pub width: u32,
    pub count: usize,
}

impl PackedIntArray {
    /// An all-zero array ready to be filled with [`PackedIntArray::set`].
    pub fn zeroed(count: usize, width: u32) -> PackedIntArray {
        assert!((1..=64).contains(&width), "width {width} out of 1..=64");
        let words = vec![0u64; words_for(count, width)];
        PackedIntArray {
            words,
            width,
            count,
        }
    }

    /// Random access to one value.
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.count);
        let width = self.width;
        let bit = i * width as usize;
        let (w, off) = (bit / 64, (bit % 64) as u32);
        let mut v = self.words[w] >> off;
        if off + width > 64 {
            v |= self.words[w + 1] << (64 - off);
        }
        if width == 64 {
            v
        } else {
            v & ((1u64 << width) - 1)
        }
    }

    /// Writes one value into a slot that is still zero.
    pub(crate) fn set(&mut self, i: usize, v: u64) {
        debug_assert!(i < self.count);
        debug_assert!(self.width == 64 || v >> self.width == 0);
        let width = self.width;
        let bit = i * width as usize;
        let (w, off) = (bit / 64, (bit % 64) as u32);
        self.words[w] |= v << off;
        if off + width > 64 {
            self.words[w + 1] |= v >> (64 - off);
        }
    }
}

/// Number of 64-bit words needed for `count` fields of `width` bits.
pub fn words_for(count: usize, width: u32) -> usize {
    let bits = count as u128 * width as u128;
    bits.div_ceil(64) as usize
}

/// Packs `values` at the given width.
///
/// Fails when a value does not fit; `width` outside `1..=64` is a caller
/// bug and panics.
pub fn pack_fixed(values: &[u64], width: u32) -> Result<PackedIntArray, Error> {
    assert!((1..=64).contains(&width), "width {width} out of 1..=64");
    for &v in values {
        if width < 64 && v >> width != 0 {
            return Err(Error::ValueTooWide { value: v, width });
        }
    }
    let mut arr = PackedIntArray::zeroed(values.len(), width);
    for (i, &v) in values.iter().enumerate() {
        arr.set(i, v);
    }
    Ok(arr)
}

/// Unpacks the whole array back into plain values.
pub fn unpack_fixed(arr: &PackedIntArray) -> Vec<u64> {
    (0..arr.count).map(|i| arr.get(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn three_two_bit_values_share_a_word() {
        let arr = pack_fixed(&[1, 2, 3], 2).unwrap();
        assert_eq!(arr.words, vec![0b11_10_01]);
        assert_eq!(arr.count, 3);
        assert_eq!(unpack_fixed(&arr), vec![1, 2, 3]);
    }

    #[test]
    fn values_straddle_word_boundaries() {
        // Seven 9-bit fields end at bit 63; the eighth straddles into the
        // second word.
        let values: Vec<u64> = (1..=8).map(|v| v * 61).collect();
        let arr = pack_fixed(&values, 9).unwrap();
        assert_eq!(arr.words.len(), 2);
        assert_eq!(unpack_fixed(&arr), values);
        for (i, &v) in values.iter().enumerate() {
            assert_eq!(arr.get(i), v);
        }
    }

    #[test]
    fn empty_input_needs_no_words() {
        let arr = pack_fixed(&[], 13).unwrap();
        assert!(arr.words.is_empty());
        assert_eq!(unpack_fixed(&arr), Vec::<u64>::new());
    }

    #[test]
    fn width_violations_are_rejected() {
        assert_eq!(
            pack_fixed(&[3, 4], 2),
            Err(Error::ValueTooWide { value: 4, width: 2 })
        );
    }

    #[test]
    fn full_width_values_survive() {
        let values = [u64::MAX, 0, 42];
        let arr = pack_fixed(&values, 64).unwrap();
        assert_eq!(unpack_fixed(&arr), values);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn roundtrip_at_any_width(
            width in 1u32..=64,
            raw in proptest::collection::vec(any::<u64>(), 0..200),
        ) {
            let values: Vec<u64> = raw
                .iter()
                .map(|&v| if width == 64 { v } else { v & ((1u64 << width) - 1) })
                .collect();
            let arr = pack_fixed(&values, width).unwrap();
            prop_assert_eq!(arr.words.len(), words_for(values.len(), width));
            prop_assert_eq!(unpack_fixed(&arr), values);
        }
    }
}
