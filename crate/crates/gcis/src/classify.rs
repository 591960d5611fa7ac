//! Suffix type classification, factorization and factor naming.
//!
//! Every suffix of a sentinel-terminated text is either S-type (smaller than
//! the suffix that follows it) or L-type (larger). Positions where an S-type
//! suffix follows an L-type one open a factor; the text splits into factors
//! that overlap by exactly one symbol, plus a final factor holding the
//! sentinel alone. For `banana` (symbols `99 98 111 98 111 98 0`):
//!
//! ```text
//! position   0  1  2  3  4  5  6
//! symbol     b  a  n  a  n  a  $
//! type       L  S  L  S  L  L  S
//! openings      ^     ^        ^
//! factors       [1,3]=ana [3,6]=ana$ [6,6]=$
//! ```
//!
//! Factors are ordered without comparing them pairwise: openings are dropped
//! at the tails of their first-symbol buckets, one left-to-right scan induces
//! every L-type position at bucket heads, and one right-to-left scan induces
//! every S-type position back at bucket tails. Afterwards the openings sit in
//! factor order, where positions compare by symbol first and, on ties, L-type
//! before S-type (`ana$` sorts before `ana` because its third `a` is L-type).
//!
//! Naming walks the sorted factors once, giving equal factors equal names and
//! recording, for each fresh name, its right-hand side (the factor minus its
//! final overlap symbol) as a shared-prefix length plus the remaining tail.

use crate::grammar::Rule;
use crate::text::{Symbol, Text};

/// Suffix types plus the factor openings derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeMap {
    /// `is_s[i]` is true when the suffix starting at `i` is S-type. The
    /// sentinel position is always S-type.
    pub is_s: Vec<bool>,
    /// Positions that open a factor: S-type with an L-type predecessor, in
    /// text order. Position 0 never qualifies.
    pub lms: Vec<usize>,
}

/// One factor occurrence as an inclusive position range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOccurrence {
    pub start: usize,
    pub end: usize,
}

/// Everything naming produces for one reduction round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamingResult {
    /// The name of each factor, in text order. Names are dense in
    /// `1..=sigma` and respect factor order.
    pub names: Vec<Symbol>,
    /// Number of distinct factors.
    pub sigma: u32,
    /// Front-coded right-hand sides, one per name, in name order.
    pub sorted_rules: Vec<Rule>,
    /// Length of the text prefix not covered by any factor.
    pub prefix_len: usize,
}

/// Classifies every suffix as S- or L-type and collects factor openings.
pub fn classify_types(t: &Text) -> TypeMap {
    let s = t.symbols();
    let n = s.len();
    let mut is_s = vec![false; n];
    is_s[n - 1] = true; // sentinel suffix
    for i in (0..n - 1).rev() {
        is_s[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && is_s[i + 1]);
    }
    let lms = (1..n).filter(|&i| is_s[i] && !is_s[i - 1]).collect();
    TypeMap { is_s, lms }
}

/// Splits the text into factors: one per opening, spanning to the next
/// opening inclusive, plus the final sentinel-only factor.
///
/// A text with no opening at all (just the sentinel) degenerates to that
/// single final factor.
pub fn factorize(t: &Text, map: &TypeMap) -> Vec<FactorOccurrence> {
    let n = t.len();
    if map.lms.is_empty() {
        return vec![FactorOccurrence {
            start: n - 1,
            end: n - 1,
        }];
    }
    debug_assert_eq!(*map.lms.last().unwrap(), n - 1, "sentinel opens a factor");
    let mut factors = Vec::with_capacity(map.lms.len());
    for w in map.lms.windows(2) {
        factors.push(FactorOccurrence {
            start: w[0],
            end: w[1],
        });
    }
    factors.push(FactorOccurrence {
        start: n - 1,
        end: n - 1,
    });
    factors
}

const EMPTY: u32 = u32::MAX;

/// Sorts the factors by induction and returns their indices in factor order.
///
/// Equal factors keep their text order, so the result is a stable sort under
/// the symbol-then-type comparison.
pub fn sort_lms(t: &Text, map: &TypeMap, factors: &[FactorOccurrence]) -> Vec<usize> {
    if map.lms.is_empty() {
        return vec![0];
    }
    let s = t.symbols();
    let n = s.len();
    let sigma = t.alphabet_size() as usize;

    let mut count = vec![0u32; sigma];
    for &c in s {
        count[c as usize] += 1;
    }
    let bucket_heads = |count: &[u32]| {
        let mut heads = vec![0u32; sigma];
        let mut sum = 0;
        for (c, &k) in count.iter().enumerate() {
            heads[c] = sum;
            sum += k;
        }
        heads
    };
    let bucket_tails = |count: &[u32]| {
        let mut tails = vec![0u32; sigma];
        let mut sum = 0;
        for (c, &k) in count.iter().enumerate() {
            sum += k;
            tails[c] = sum;
        }
        tails
    };

    let mut sa = vec![EMPTY; n];

    // Drop the unsorted openings at their bucket tails, right to left.
    let mut tails = bucket_tails(&count);
    for &p in map.lms.iter().rev() {
        let c = s[p] as usize;
        tails[c] -= 1;
        sa[tails[c] as usize] = p as u32;
    }

    // Induce L-type positions at bucket heads, left to right.
    let mut heads = bucket_heads(&count);
    for i in 0..n {
        let p = sa[i];
        if p == EMPTY || p == 0 {
            continue;
        }
        let j = (p - 1) as usize;
        if !map.is_s[j] {
            let c = s[j] as usize;
            sa[heads[c] as usize] = j as u32;
            heads[c] += 1;
        }
    }

    // Induce S-type positions at bucket tails, right to left.
    let mut tails = bucket_tails(&count);
    for i in (0..n).rev() {
        let p = sa[i];
        if p == EMPTY || p == 0 {
            continue;
        }
        let j = (p - 1) as usize;
        if map.is_s[j] {
            let c = s[j] as usize;
            tails[c] -= 1;
            sa[tails[c] as usize] = j as u32;
        }
    }

    // The openings now sit in factor order; map them back to factor indices.
    let mut factor_at = vec![EMPTY; n];
    for (i, f) in factors.iter().enumerate() {
        factor_at[f.start] = i as u32;
    }
    let mut order = Vec::with_capacity(factors.len());
    for &p in sa.iter() {
        debug_assert_ne!(p, EMPTY, "induction fills every slot");
        let f = factor_at[p as usize];
        if f != EMPTY {
            order.push(f as usize);
        }
    }
    debug_assert_eq!(order.len(), factors.len());
    order
}

/// Names the sorted factors and front-codes their right-hand sides.
///
/// Walks the factor order once: a factor equal to its predecessor reuses the
/// predecessor's name, anything else mints the next name and records a rule.
/// The rule body is the factor minus its final symbol (the overlap with the
/// next factor, or the sentinel); it is stored as the length shared with the
/// previous rule body plus the differing tail.
pub fn name_factors(t: &Text, factors: &[FactorOccurrence], sorted: &[usize]) -> NamingResult {
    let s = t.symbols();
    let mut names = vec![0 as Symbol; factors.len()];
    let mut rules: Vec<Rule> = Vec::with_capacity(factors.len());
    let mut sigma = 0u32;
    let mut prev_occ: &[Symbol] = &[];
    let mut prev_rhs: &[Symbol] = &[];
    for &fi in sorted {
        let f = &factors[fi];
        let occ = &s[f.start..=f.end];
        if sigma == 0 || occ != prev_occ {
            sigma += 1;
            let rhs = &s[f.start..f.end];
            let lcp = common_prefix(prev_rhs, rhs);
            rules.push(Rule {
                lcp,
                tail: rhs[lcp..].to_vec(),
            });
            prev_occ = occ;
            prev_rhs = rhs;
        }
        names[fi] = sigma;
    }
    NamingResult {
        names,
        sigma,
        sorted_rules: rules,
        prefix_len: factors[0].start,
    }
}

fn common_prefix(a: &[Symbol], b: &[Symbol]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}
