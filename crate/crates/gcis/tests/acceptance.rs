//! The acceptance gate: eight criteria, each printing one verdict line
//! with its measured numbers before asserting.
//!
//! Run `cargo test -p gcis --test acceptance -- --nocapture` to see the
//! verdict lines of passing criteria too; failures always show theirs.

use std::time::Instant;

use gcis::classify::{classify_types, factorize, sort_lms};
use gcis::codec::simple8b::{s8b_decode, s8b_encode, Simple8bWord};
use gcis::corpus::{gen_fibonacci, gen_random, gen_thue_morse};
use gcis::{compress, decompress, reduce_once, Error, Text};
use gcis_oracle::{naive_classify, naive_lms_order};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    let flag = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {flag} — {detail}");
    assert!(pass, "criterion {criterion}: {flag} — {detail}");
}

/// Regimen (a): every string over the symbols {1, 2, 3} up to length 10 —
/// 88,573 inputs including the empty one.
fn exhaustive_inputs() -> Vec<Vec<u8>> {
    let mut all = Vec::with_capacity(88_573);
    for len in 0..=10u32 {
        for mut idx in 0..3usize.pow(len) {
            let mut s = Vec::with_capacity(len as usize);
            for _ in 0..len {
                s.push(1 + (idx % 3) as u8);
                idx /= 3;
            }
            all.push(s);
        }
    }
    assert_eq!(all.len(), 88_573);
    all
}

/// Regimen (b): 10,000 seeded random strings of length at most 4096 over
/// alphabets cycling through 1..=256 byte values.
fn random_inputs() -> Vec<Vec<u8>> {
    (0..10_000u64)
        .map(|i| {
            let n = ((i * 7919) % 4097) as usize;
            let sigma = 1 + (i % 256) as u32;
            gen_random(n, sigma, 0xACCE97 + i).unwrap()
        })
        .collect()
}

/// Regimen (c): structured corpora up to 8 MiB.
fn corpus_inputs() -> Vec<(String, Vec<u8>)> {
    let mut all = Vec::new();
    for k in [10, 20, 28, 33] {
        all.push((format!("fibonacci k={k}"), gen_fibonacci(k).unwrap()));
    }
    for n in [1 << 10, 1 << 16, 1 << 20, 1 << 23] {
        all.push((format!("thue-morse n={n}"), gen_thue_morse(n).unwrap()));
    }
    all.push(("periodic ab x 2^22".into(), b"ab".repeat(1 << 22)));
    all.push(("periodic abc x 2M".into(), b"abc".repeat(2_000_000)));
    all.push(("constant z x 2^20".into(), vec![b'z'; 1 << 20]));
    all
}

#[test]
fn criterion_1_lossless_roundtrip() {
    let start = Instant::now();
    let mut count = 0usize;
    for data in exhaustive_inputs() {
        assert_eq!(
            decompress(&compress(&data)).unwrap(),
            data,
            "input {data:?}"
        );
        count += 1;
    }
    for data in random_inputs() {
        assert_eq!(
            decompress(&compress(&data)).unwrap(),
            data,
            "len {}",
            data.len()
        );
        count += 1;
    }
    for (name, data) in corpus_inputs() {
        assert_eq!(decompress(&compress(&data)).unwrap(), data, "{name}");
        count += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "1 (lossless roundtrip)",
        secs < 300.0,
        &format!("{count} inputs roundtripped exactly in {secs:.1}s (limit 300s)"),
    );
}

#[test]
fn criterion_2_suffix_classification_matches_oracles() {
    let mut count = 0usize;
    for data in exhaustive_inputs().into_iter().chain(random_inputs()) {
        let t = Text::from_bytes(&data);
        let map = classify_types(&t);
        assert_eq!(map, naive_classify(&t), "types differ on {data:?}");
        let factors = factorize(&t, &map);
        let order = sort_lms(&t, &map, &factors);
        assert_eq!(
            order,
            naive_lms_order(&t, &factors),
            "factor order differs on {data:?}"
        );
        count += 1;
    }
    verdict(
        "2 (classification and factor order vs oracles)",
        true,
        &format!("{count} inputs agreed exactly"),
    );
}

/// Walks the reduction chain without the cost-based stop, handing every
/// round to `check`.
fn walk_reduction(data: &[u8], mut check: impl FnMut(&Text, &gcis::LevelDictionary, &Text)) {
    let mut current = Text::from_bytes(data);
    for _ in 0..64 {
        let (dict, reduced) = reduce_once(&current);
        check(&current, &dict, &reduced);
        if dict.sigma as usize == reduced.len() - 1 {
            return;
        }
        current = reduced;
    }
    panic!("reduction chain did not terminate within 64 rounds");
}

#[test]
fn criterion_3_each_round_at_least_halves() {
    let mut rounds = 0usize;
    let mut deepest = 0usize;
    let mut inputs = 0usize;
    let corpora = [
        gen_fibonacci(20).unwrap(),
        gen_thue_morse(1 << 16).unwrap(),
        b"ab".repeat(1 << 15),
    ];
    for data in exhaustive_inputs()
        .into_iter()
        .chain(random_inputs())
        .chain(corpora)
    {
        let mut depth = 0usize;
        walk_reduction(&data, |current, _, reduced| {
            assert!(
                reduced.len() <= current.len().div_ceil(2) + 1,
                "round grew {} -> {} on input of {} bytes",
                current.len(),
                reduced.len(),
                data.len()
            );
            depth += 1;
        });
        rounds += depth;
        deepest = deepest.max(depth);
        inputs += 1;
    }
    verdict(
        "3 (reduced length at most half plus one)",
        true,
        &format!("{rounds} rounds over {inputs} inputs held the bound (deepest chain {deepest})"),
    );
}

#[test]
fn criterion_4_dictionary_streams_stay_bounded() {
    let mut rounds = 0usize;
    let mut inputs = 0usize;
    let corpora = [
        gen_fibonacci(20).unwrap(),
        gen_thue_morse(1 << 16).unwrap(),
        b"ab".repeat(1 << 15),
    ];
    for data in exhaustive_inputs()
        .into_iter()
        .chain(random_inputs())
        .chain(corpora)
    {
        walk_reduction(&data, |current, dict, _| {
            let shared: usize = dict.rules.iter().map(|r| r.lcp).sum();
            let tails: usize = dict.rules.iter().map(|r| r.tail.len()).sum();
            assert!(
                shared <= current.len() && tails <= current.len(),
                "streams {shared}/{tails} exceed text of {} symbols",
                current.len()
            );
        });
        rounds += 1;
        inputs += 1;
    }
    let _ = rounds;
    verdict(
        "4 (shared-prefix and tail streams within text length)",
        true,
        &format!("{inputs} inputs kept both streams bounded at every round"),
    );
}

#[test]
fn criterion_5_ratio_targets_on_reference_corpora() {
    let start = Instant::now();
    let cases = [
        ("fibonacci k=30", gen_fibonacci(30).unwrap(), 0.0, 1.0),
        (
            "thue-morse n=2^20",
            gen_thue_morse(1 << 20).unwrap(),
            0.0,
            2.0,
        ),
        (
            "uniform n=2^20 sigma=256",
            gen_random(1 << 20, 256, 42).unwrap(),
            50.0,
            115.0,
        ),
    ];
    let mut lines = Vec::new();
    for (name, data, lo, hi) in &cases {
        let archive = compress(data);
        assert_eq!(decompress(&archive).unwrap(), *data, "{name} not lossless");
        let ratio = 100.0 * archive.len() as f64 / data.len() as f64;
        assert!(
            (*lo..=*hi).contains(&ratio),
            "{name}: ratio {ratio:.3}% outside {lo}%..={hi}%"
        );
        lines.push(format!("{name} {ratio:.3}% (allowed {lo}%..={hi}%)"));
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "5 (compression ratios on reference corpora)",
        secs < 120.0,
        &format!("{}; {secs:.1}s (limit 120s)", lines.join("; ")),
    );
}

#[test]
fn criterion_6_integer_codec_conformance() {
    // Every selector at its exact group size and maximum value packs into
    // one word; one extra value forces a second.
    for sel in 0..16u64 {
        let (items, bits) = Simple8bWord(sel).layout();
        let max = if bits == 0 { 0 } else { (1u64 << bits) - 1 };
        let exact = vec![max; items];
        let words = s8b_encode(&exact).unwrap();
        assert_eq!(words.len(), 1, "selector {sel} needs one word");
        assert_eq!(s8b_decode(&words, exact.len()).unwrap(), exact);
        let over = vec![max; items + 1];
        let words = s8b_encode(&over).unwrap();
        assert_eq!(words.len(), 2, "selector {sel} plus one value needs two");
        assert_eq!(s8b_decode(&words, over.len()).unwrap(), over);
    }

    assert_eq!(
        s8b_encode(&[1u64 << 60]),
        Err(Error::UnencodableValue(1 << 60))
    );

    let mut rng = ChaCha8Rng::seed_from_u64(0x51395);
    let mut values: Vec<u64> = (0..1_000_000)
        .map(|_| rng.next_u64() >> (4 + rng.next_u32() % 60))
        .collect();
    values.extend([0, 1, (1 << 60) - 1]);
    let words = s8b_encode(&values).unwrap();
    assert_eq!(s8b_decode(&words, values.len()).unwrap(), values);
    verdict(
        "6 (64-bit packed integer codec)",
        true,
        &format!(
            "16 selector boundaries exact, value 2^60 rejected, {} random values roundtripped",
            values.len()
        ),
    );
}

#[test]
fn criterion_7_compression_scales_linearly() {
    let sizes: Vec<usize> = (20..=24).map(|p| 1usize << p).collect();
    let inputs: Vec<Vec<u8>> = sizes
        .iter()
        .map(|&n| gen_random(n, 256, 0xBEEF).unwrap())
        .collect();
    // The wall clock is shared with whatever tests run alongside this one,
    // so sweep repeatedly, keep the per-size minimum — later sweeps run on
    // a progressively quieter machine — and stop once the curve is sane.
    let mut times = vec![f64::INFINITY; sizes.len()];
    let mut worst = f64::INFINITY;
    let mut sweeps = 0usize;
    for _ in 0..4 {
        sweeps += 1;
        for (i, data) in inputs.iter().enumerate() {
            for _ in 0..2 {
                let t0 = Instant::now();
                let archive = compress(data);
                times[i] = times[i].min(t0.elapsed().as_secs_f64());
                assert!(
                    archive.len() > data.len() / 2,
                    "sanity: archive unexpectedly small"
                );
            }
        }
        worst = times.windows(2).map(|w| w[1] / w[0]).fold(0.0f64, f64::max);
        if worst <= 3.0 {
            break;
        }
    }
    let curve: Vec<String> = sizes
        .iter()
        .zip(&times)
        .map(|(n, t)| format!("2^{} {:.3}s", n.trailing_zeros(), t))
        .collect();
    verdict(
        "7 (near-linear compression time)",
        worst <= 3.0,
        &format!(
            "doubling curve [{}], worst step x{worst:.2} (limit x3, {sweeps} sweeps)",
            curve.join(", ")
        ),
    );
}

const GOLDEN_BANANA: &[u8] = include_bytes!("data/banana.gcis");

#[test]
fn criterion_8_deterministic_archives() {
    let inputs = [
        Vec::new(),
        gen_fibonacci(18).unwrap(),
        gen_thue_morse(1 << 12).unwrap(),
        gen_random(1 << 14, 256, 9).unwrap(),
    ];
    for data in &inputs {
        assert_eq!(compress(data), compress(data), "len {}", data.len());
    }
    let archive = compress(b"banana");
    assert_eq!(
        archive, GOLDEN_BANANA,
        "banana archive drifted from the golden file"
    );
    assert_eq!(decompress(GOLDEN_BANANA).unwrap(), b"banana");
    verdict(
        "8 (deterministic archives and golden file)",
        true,
        &format!(
            "{} inputs compressed identically twice; banana matches the {}-byte golden archive",
            inputs.len(),
            GOLDEN_BANANA.len()
        ),
    );
}

/// Refreshes the golden archive from the current encoder. Run explicitly
/// with `cargo test -p gcis --test acceptance -- --ignored regenerate`
/// after an intentional format change, and review the diff.
#[test]
#[ignore]
fn regenerate_golden_archive() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/banana.gcis");
    std::fs::write(path, compress(b"banana")).unwrap();
}
