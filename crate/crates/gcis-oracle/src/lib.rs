//! Brute-force reference implementations for cross-checking the engine.
//!
//! Everything here trades speed for obviousness: suffix types come from
//! comparing suffix slices outright, the factor order from a stable sort
//! over materialized keys, and expansion from plain nested vectors. The
//! engine must agree with these on every input small enough to afford
//! them.

use gcis::classify::{FactorOccurrence, TypeMap};
use gcis::{Grammar, Symbol, Text, SENTINEL};

/// Inputs above this symbol count are a mistake; the quadratic paths here
/// would crawl.
pub const MAX_ORACLE_LEN: usize = 1 << 16;

fn check_size(t: &Text) {
    assert!(
        t.len() <= MAX_ORACLE_LEN,
        "oracle input of {} symbols exceeds {}",
        t.len(),
        MAX_ORACLE_LEN
    );
}

/// Suffix types straight from the definition: position `i` is S when the
/// suffix starting there compares less than the one starting at `i + 1`,
/// and the sentinel suffix is S.
pub fn naive_classify(t: &Text) -> TypeMap {
    check_size(t);
    let s = t.symbols();
    let n = s.len();
    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in 0..n - 1 {
        is_s[i] = s[i..] < s[i + 1..];
    }
    let lms = (1..n).filter(|&i| is_s[i] && !is_s[i - 1]).collect();
    TypeMap { is_s, lms }
}

/// Factor order from a stable sort over per-position `(symbol, type)` keys,
/// L before S on equal symbols.
pub fn naive_lms_order(t: &Text, factors: &[FactorOccurrence]) -> Vec<usize> {
    check_size(t);
    let s = t.symbols();
    let types = naive_classify(t);
    let key = |f: &FactorOccurrence| -> Vec<(Symbol, u8)> {
        (f.start..=f.end)
            .map(|i| (s[i], types.is_s[i] as u8))
            .collect()
    };
    let keys: Vec<_> = factors.iter().map(key).collect();
    let mut order: Vec<usize> = (0..factors.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    order
}

/// Expansion by plain substitution: materialize every body as its own
/// vector, then rewrite the text level by level.
pub fn naive_expand(g: &Grammar) -> Vec<u8> {
    let mut symbols: Vec<Symbol> = g.final_text.symbols().to_vec();
    assert!(symbols.len() <= MAX_ORACLE_LEN);
    for d in g.levels.iter().rev() {
        let mut bodies: Vec<Vec<Symbol>> = Vec::with_capacity(d.rules.len());
        for r in &d.rules {
            let mut body: Vec<Symbol> = match bodies.last() {
                Some(prev) => prev[..r.lcp].to_vec(),
                None => {
                    assert_eq!(r.lcp, 0, "the first rule has nothing to share");
                    Vec::new()
                }
            };
            body.extend_from_slice(&r.tail);
            bodies.push(body);
        }
        let mut next: Vec<Symbol> = d.prefix_rule.clone();
        for &name in &symbols[..symbols.len() - 1] {
            next.extend_from_slice(&bodies[name as usize - 1]);
        }
        next.push(SENTINEL);
        assert!(next.len() <= MAX_ORACLE_LEN);
        symbols = next;
    }
    symbols[..symbols.len() - 1]
        .iter()
        .map(|&v| (v - 1) as u8)
        .collect()
}
