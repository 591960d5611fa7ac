//! Simple8b: packs runs of small integers into 64-bit words.
//!
//! Each word spends its low 4 bits on a selector and the remaining 60 on
//! payload. The selector fixes how many values the word carries and at what
//! width:
//!
//! ```text
//! selector   0    1    2   3   4   5   6   7   8   9   10  11  12  13  14  15
//! values     240  120  60  30  20  15  12  10  8   7   6   5   4   3   2   1
//! bits each  0    0    1   2   3   4   5   6   7   8   10  12  15  20  30  60
//! ```
//!
//! Selectors 0 and 1 store long runs of zeros with no payload at all. The
//! encoder is greedy: a zero-run selector whenever enough zeros are pending,
//! otherwise the densest selector whose width fits the next group of values.
//! The last group is padded with zeros; the decoder trims by an explicit
//! value count, so the padding never leaks out.
//!
//! Words are little-endian on the wire, and the payload fills from the low
//! end: value `k` of a word sits at payload bits `[k*width, (k+1)*width)`.

use crate::error::Error;

/// Values must fit in the payload of the sparsest selector.
pub const MAX_VALUE_BITS: u32 = 60;

/// `(values, bits each)` per selector.
const SELECTORS: [(usize, u32); 16] = [
    (240, 0),
    (120, 0),
    (60, 1),
    (30, 2),
    (20, 3),
    (15, 4),
    (12, 5),
    (10, 6),
    (8, 7),
    (7, 8),
    (6, 10),
    (5, 12),
    (4, 15),
    (3, 20),
    (2, 30),
    (1, 60),
];

/// One encoded word: selector in the low 4 bits, payload above.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simple8bWord(pub u64);

impl Simple8bWord {
    pub fn selector(self) -> u8 {
        (self.0 & 0xF) as u8
    }

    /// `(values, bits each)` for this word's selector.
    pub fn layout(self) -> (usize, u32) {
        SELECTORS[self.selector() as usize]
    }
}

/// Encodes a value sequence into Simple8b words.
///
/// Fails without emitting anything when a value needs more than 60 bits.
pub fn s8b_encode(values: &[u64]) -> Result<Vec<Simple8bWord>, Error> {
    if let Some(&v) = values.iter().find(|&&v| v >> MAX_VALUE_BITS != 0) {
        return Err(Error::UnencodableValue(v));
    }
    let mut words = Vec::new();
    let mut rest = values;
    while !rest.is_empty() {
        if rest.len() >= 240 && rest[..240].iter().all(|&v| v == 0) {
            words.push(Simple8bWord(0));
            rest = &rest[240..];
        } else if rest.len() >= 120 && rest[..120].iter().all(|&v| v == 0) {
            words.push(Simple8bWord(1));
            rest = &rest[120..];
        } else {
            let (word, taken) = pack_group(rest);
            words.push(word);
            rest = &rest[taken..];
        }
    }
    Ok(words)
}

/// Packs the next group with the densest selector that fits, padding a final
/// short group with zeros.
fn pack_group(rest: &[u64]) -> (Simple8bWord, usize) {
    for (sel, &(per_word, width)) in SELECTORS.iter().enumerate().skip(2) {
        let take = per_word.min(rest.len());
        if rest[..take].iter().all(|&v| v >> width == 0) {
            let mut word = sel as u64;
            for (k, &v) in rest[..take].iter().enumerate() {
                word |= v << (4 + k as u32 * width);
            }
            return (Simple8bWord(word), take);
        }
    }
    unreachable!("selector 15 fits any value below 2^60");
}

/// Decodes exactly `count` values, trimming the final word's padding.
///
/// Fails with [`Error::Truncated`] when the words run out first.
pub fn s8b_decode(words: &[Simple8bWord], count: usize) -> Result<Vec<u64>, Error> {
    let mut out = Vec::with_capacity(count.min(words.len().saturating_mul(240)));
    for w in words {
        if out.len() == count {
            break;
        }
        let (per_word, width) = w.layout();
        if width == 0 {
            let take = per_word.min(count - out.len());
            out.resize(out.len() + take, 0);
        } else {
            let mask = u64::MAX >> (64 - width);
            for k in 0..per_word {
                if out.len() == count {
                    break;
                }
                out.push((w.0 >> (4 + k as u32 * width)) & mask);
            }
        }
    }
    if out.len() < count {
        return Err(Error::Truncated);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn selector_table_matches_the_layout() {
        for (sel, &(per_word, width)) in SELECTORS.iter().enumerate() {
            assert!(per_word as u32 * width <= 60);
            assert_eq!(Simple8bWord(sel as u64).selector(), sel as u8);
            assert_eq!(Simple8bWord(sel as u64).layout(), (per_word, width));
        }
    }

    #[test]
    fn small_group_lands_in_one_word() {
        // 2, 3, 1 need two bits each: selector 3, thirty slots, 27 padded.
        let words = s8b_encode(&[2, 3, 1]).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].selector(), 3);
        assert_eq!(words[0].0, 3 | (2 << 4) | (3 << 6) | (1 << 8));
        assert_eq!(s8b_decode(&words, 3).unwrap(), vec![2, 3, 1]);
    }

    #[test]
    fn long_zero_runs_use_the_run_selectors() {
        let zeros = vec![0u64; 240];
        let words = s8b_encode(&zeros).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].selector(), 0);
        assert_eq!(s8b_decode(&words, 240).unwrap(), zeros);

        let words = s8b_encode(&vec![0u64; 120]).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].selector(), 1);

        // 300 zeros: one full 240-run, then 60 zeros at one bit each.
        let zeros = vec![0u64; 300];
        let words = s8b_encode(&zeros).unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(words[0].selector(), 0);
        assert_eq!(words[1].selector(), 2);
        assert_eq!(s8b_decode(&words, 300).unwrap(), zeros);
    }

    #[test]
    fn zero_run_selectors_need_enough_pending_zeros() {
        // 119 zeros and a one: no run selector may fire.
        let mut values = vec![0u64; 119];
        values.push(1);
        let words = s8b_encode(&values).unwrap();
        assert!(words.iter().all(|w| w.selector() >= 2));
        assert_eq!(s8b_decode(&words, values.len()).unwrap(), values);
    }

    #[test]
    fn max_value_fills_an_entire_word() {
        let v = (1u64 << 60) - 1;
        let words = s8b_encode(&[v]).unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].selector(), 15);
        assert_eq!(words[0].0, u64::MAX);
        assert_eq!(s8b_decode(&words, 1).unwrap(), vec![v]);
    }

    #[test]
    fn oversized_values_are_rejected() {
        assert_eq!(
            s8b_encode(&[1, 1 << 60, 1]),
            Err(Error::UnencodableValue(1 << 60))
        );
    }

    #[test]
    fn empty_input_produces_no_words() {
        assert_eq!(s8b_encode(&[]).unwrap(), vec![]);
        assert_eq!(s8b_decode(&[], 0).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn missing_words_are_reported_as_truncation() {
        let words = s8b_encode(&[5, 5, 5]).unwrap();
        assert_eq!(s8b_decode(&words, 100), Err(Error::Truncated));
        assert_eq!(s8b_decode(&[], 1), Err(Error::Truncated));
    }

    fn boundary_values() -> impl Strategy<Value = u64> {
        // Mix magnitudes so every selector gets exercised.
        (0u32..=59).prop_flat_map(|bits| 0u64..=(1u64 << bits))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn roundtrip(values in proptest::collection::vec(boundary_values(), 0..600)) {
            let words = s8b_encode(&values).unwrap();
            prop_assert_eq!(s8b_decode(&words, values.len()).unwrap(), values);
        }

        /// The greedy packer never does worse than one word per value.
        #[test]
        fn word_count_is_bounded(values in proptest::collection::vec(0u64..1 << 20, 0..400)) {
            let words = s8b_encode(&values).unwrap();
            prop_assert!(words.len() <= values.len());
        }
    }
}
