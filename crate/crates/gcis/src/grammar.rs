//! Grammar construction: repeated factorization with a size-based stop rule.
//!
//! One reduction round factorizes a text, names the factors and returns the
//! dictionary for that round plus the reduced text (the name sequence). The
//! builder repeats rounds until either every factor at a round is distinct —
//! the reduced text cannot shrink further by naming — or keeping the new
//! round would cost more than it saves, in which case the round is discarded
//! and the current text is kept as the final one.

use crate::classify::{classify_types, factorize, name_factors, sort_lms};
use crate::codec::archive::encode_level;
use crate::error::Error;
use crate::text::{Symbol, Text, SENTINEL};

/// One dictionary rule: its body shares `lcp` leading symbols with the
/// previous rule's body and continues with `tail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lcp: usize,
    pub tail: Vec<Symbol>,
}

impl Rule {
    /// Length of the body this rule encodes.
    pub fn body_len(&self) -> usize {
        self.lcp + self.tail.len()
    }
}

/// Everything one reduction round contributes to the grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDictionary {
    /// 1 for the round applied to the byte-level text, counting up.
    pub level: u32,
    /// Number of rules; names in the reduced text are `1..=sigma`.
    pub sigma: u32,
    /// Front-coded rule bodies in name order.
    pub rules: Vec<Rule>,
    /// The input-text prefix no factor covers, copied verbatim.
    pub prefix_rule: Vec<Symbol>,
    /// Alphabet size of the input text; rule bodies and the prefix rule are
    /// written in that alphabet.
    pub rhs_alphabet_size: u32,
}

impl LevelDictionary {
    /// Total number of symbols across all rule bodies.
    pub fn body_symbols(&self) -> usize {
        self.rules.iter().map(Rule::body_len).sum()
    }
}

/// A complete compressed representation: the dictionary stack plus the last
/// reduced text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    /// Dictionaries in round order (level 1 first).
    pub levels: Vec<LevelDictionary>,
    /// The text left when reduction stopped; level equals `levels.len()`.
    pub final_text: Text,
    /// Byte length of the original input, sentinel not counted.
    pub original_len: usize,
}

/// Applies one reduction round.
///
/// Returns the round's dictionary and the reduced text: the factor names in
/// text order, sentinel re-appended, over the alphabet `sigma + 1`.
pub fn reduce_once(t: &Text) -> (LevelDictionary, Text) {
    let map = classify_types(t);
    let factors = factorize(t, &map);
    let order = sort_lms(t, &map, &factors);
    let naming = name_factors(t, &factors, &order);

    let dict = LevelDictionary {
        level: t.level() + 1,
        sigma: naming.sigma,
        rules: naming.sorted_rules,
        prefix_rule: t.symbols()[..naming.prefix_len].to_vec(),
        rhs_alphabet_size: t.alphabet_size(),
    };
    debug_assert!(dict.rules.iter().map(|r| r.lcp).sum::<usize>() <= t.len());
    debug_assert!(dict.rules.iter().map(|r| r.tail.len()).sum::<usize>() <= t.len());

    let mut symbols = naming.names;
    symbols.push(SENTINEL);
    let reduced = Text::from_parts_unchecked(symbols, naming.sigma + 1, t.level() + 1);
    (dict, reduced)
}

/// Knobs for [`build_grammar_with`].
#[derive(Debug, Clone)]
pub struct BuildOptions {
    /// Stop reducing once a round would grow the encoding. On by default;
    /// turning it off reduces until every factor is distinct, whatever the
    /// cost.
    pub greedy_stop: bool,
    /// Hard cap on the number of rounds, for experiments.
    pub max_levels: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            greedy_stop: true,
            max_levels: None,
        }
    }
}

/// Builds the full grammar for a text with default options.
pub fn build_grammar(t: &Text) -> Grammar {
    build_grammar_with(t, &BuildOptions::default())
}

/// Builds the full grammar for a text.
///
/// Rounds are applied until one of:
///
/// * every factor of the new round is distinct — the round is kept and its
///   reduced text becomes the final text;
/// * the greedy stop fires: the new dictionary's encoded size plus the bit
///   size of the new reduced text is at least the bit size of the current
///   text, so the round is discarded;
/// * the round cap is reached.
pub fn build_grammar_with(t: &Text, opts: &BuildOptions) -> Grammar {
    let original_len = t.len() - 1;
    let mut current = t.clone();
    let mut levels: Vec<LevelDictionary> = Vec::new();
    loop {
        if let Some(cap) = opts.max_levels {
            if levels.len() >= cap {
                break;
            }
        }
        let (dict, reduced) = reduce_once(&current);
        let factor_count = reduced.len() - 1;
        if dict.sigma as usize == factor_count {
            // Every factor is distinct: naming cannot shrink the text any
            // further, so this round is the last one.
            log::debug!(
                "level {}: sigma {} = factor count, final text {} symbols",
                dict.level,
                dict.sigma,
                factor_count
            );
            levels.push(dict);
            current = reduced;
            break;
        }
        if opts.greedy_stop {
            let dict_bits = 8 * encoded_dictionary_size(&dict) as u64;
            let new_bits = string_cost_bits(&reduced);
            let current_bits = string_cost_bits(&current);
            if dict_bits + new_bits >= current_bits {
                log::debug!(
                    "level {}: {} dictionary bits + {} string bits vs {} bits, discarding round",
                    dict.level,
                    dict_bits,
                    new_bits,
                    current_bits
                );
                break;
            }
        }
        log::debug!(
            "level {}: sigma {}, {} -> {} symbols",
            dict.level,
            dict.sigma,
            current.len(),
            reduced.len()
        );
        levels.push(dict);
        current = reduced;
    }
    Grammar {
        levels,
        final_text: current,
        original_len,
    }
}

/// Bit cost of storing a text as a fixed-width symbol sequence: one field of
/// `bit_length(sigma)` bits per symbol, sentinel not stored.
fn string_cost_bits(t: &Text) -> u64 {
    (t.len() as u64 - 1) * bit_length(t.alphabet_size() as u64 - 1)
}

/// Exact byte size the codec emits for a dictionary block.
fn encoded_dictionary_size(d: &LevelDictionary) -> usize {
    encode_level(d)
        .expect("fresh dictionaries always encode")
        .len()
}

fn bit_length(x: u64) -> u64 {
    debug_assert!(x > 0);
    64 - x.leading_zeros() as u64
}

/// Position of a level's name in a single global numbering that lays the
/// levels out back to back: names of level 1 keep their value, later levels
/// are offset by the rule counts of the levels below. For inspection output
/// only; nothing is stored in this numbering.
pub fn naming_offset(levels: &[LevelDictionary], level: usize, name: Symbol) -> Result<u64, Error> {
    if level == 0 || level > levels.len() {
        return Err(Error::Corrupt {
            detail: "naming offset: no such level",
        });
    }
    let sigma = levels[level - 1].sigma;
    if name == 0 || name > sigma {
        return Err(Error::SymbolOutOfRange {
            symbol: name,
            limit: sigma,
        });
    }
    let below: u64 = levels[..level - 1].iter().map(|d| d.sigma as u64).sum();
    Ok(below + name as u64)
}
