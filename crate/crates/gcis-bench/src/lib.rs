//! Benchmark harness: corpus descriptions, a ratio/time runner and report
//! formatting.
//!
//! A corpus is named by a compact spec string — `fib:k=30`,
//! `tm:n=1048576`, `rand:n=65536,sigma=256,seed=7`, `file:path/to/input`
//! — that parses into a [`CorpusSpec`]. [`run_bench`] generates each
//! corpus, proves the roundtrip is lossless, then reports the compression
//! ratio and median-of-trials wall times. Timing wraps only the in-memory
//! compress and decompress calls; generation and verification stay
//! outside the clock, and corpora run one after another so timings do not
//! fight for the machine.

use std::fmt;
use std::fs;
use std::io;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use gcis::corpus::{gen_fibonacci, gen_random, gen_thue_morse, CorpusError};
use serde::Serialize;

/// A benchmark input: either a generated family or a local file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSpec {
    Fibonacci { k: u32 },
    ThueMorse { n: usize },
    Random { n: usize, sigma: u32, seed: u64 },
    File { path: PathBuf },
}

impl CorpusSpec {
    /// Materializes the corpus bytes.
    pub fn generate(&self) -> Result<Vec<u8>, BenchError> {
        match self {
            CorpusSpec::Fibonacci { k } => Ok(gen_fibonacci(*k)?),
            CorpusSpec::ThueMorse { n } => Ok(gen_thue_morse(*n)?),
            CorpusSpec::Random { n, sigma, seed } => Ok(gen_random(*n, *sigma, *seed)?),
            CorpusSpec::File { path } => Ok(fs::read(path)?),
        }
    }
}

impl fmt::Display for CorpusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusSpec::Fibonacci { k } => write!(f, "fib:k={k}"),
            CorpusSpec::ThueMorse { n } => write!(f, "tm:n={n}"),
            CorpusSpec::Random { n, sigma, seed } => {
                write!(f, "rand:n={n},sigma={sigma},seed={seed}")
            }
            CorpusSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

impl FromStr for CorpusSpec {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<CorpusSpec, BenchError> {
        let bad = |reason: &str| BenchError::BadSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (family, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        if family == "file" {
            if rest.is_empty() {
                return Err(bad("empty file path"));
            }
            return Ok(CorpusSpec::File {
                path: PathBuf::from(rest),
            });
        }
        let mut k = None;
        let mut n = None;
        let mut sigma = None;
        let mut seed = None;
        for field in rest.split(',') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| bad("fields must be key=value"))?;
            let slot = match key {
                "k" => &mut k,
                "n" => &mut n,
                "sigma" => &mut sigma,
                "seed" => &mut seed,
                _ => return Err(bad("unknown field")),
            };
            if slot.is_some() {
                return Err(bad("field given twice"));
            }
            *slot = Some(
                value
                    .parse::<u64>()
                    .map_err(|_| bad("fields take unsigned integers"))?,
            );
        }
        let only = |wanted: &[&str], got: &[bool]| -> Result<(), BenchError> {
            if got.iter().any(|&extra| extra) {
                return Err(bad("field does not apply to this family"));
            }
            let _ = wanted;
            Ok(())
        };
        match family {
            "fib" => {
                only(&["k"], &[n.is_some(), sigma.is_some(), seed.is_some()])?;
                let k = k.ok_or_else(|| bad("fib needs k"))?;
                Ok(CorpusSpec::Fibonacci {
                    k: u32::try_from(k).map_err(|_| bad("k out of range"))?,
                })
            }
            "tm" => {
                only(&["n"], &[k.is_some(), sigma.is_some(), seed.is_some()])?;
                let n = n.ok_or_else(|| bad("tm needs n"))?;
                Ok(CorpusSpec::ThueMorse {
                    n: usize::try_from(n).map_err(|_| bad("n out of range"))?,
                })
            }
            "rand" => {
                only(&["n", "sigma", "seed"], &[k.is_some()])?;
                let n = n.ok_or_else(|| bad("rand needs n"))?;
                let sigma = sigma.ok_or_else(|| bad("rand needs sigma"))?;
                Ok(CorpusSpec::Random {
                    n: usize::try_from(n).map_err(|_| bad("n out of range"))?,
                    sigma: u32::try_from(sigma).map_err(|_| bad("sigma out of range"))?,
                    seed: seed.unwrap_or(0),
                })
            }
            _ => Err(bad("unknown corpus family")),
        }
    }
}

/// Why a benchmark run stopped.
#[derive(Debug)]
pub enum BenchError {
    /// A corpus spec string did not parse.
    BadSpec { spec: String, reason: String },
    /// A generator refused its parameters.
    Corpus(CorpusError),
    /// A `file:` corpus could not be read.
    Io(io::Error),
    /// Decompression did not reproduce the corpus — nothing is reported
    /// past this point.
    VerifyFailed { corpus: String },
}

impl fmt::Display for BenchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BenchError::BadSpec { spec, reason } => {
                write!(f, "corpus spec '{spec}': {reason}")
            }
            BenchError::Corpus(e) => write!(f, "corpus generation: {e}"),
            BenchError::Io(e) => write!(f, "corpus file: {e}"),
            BenchError::VerifyFailed { corpus } => {
                write!(f, "roundtrip verification failed on {corpus}")
            }
        }
    }
}

impl std::error::Error for BenchError {}

impl From<CorpusError> for BenchError {
    fn from(e: CorpusError) -> BenchError {
        BenchError::Corpus(e)
    }
}

impl From<io::Error> for BenchError {
    fn from(e: io::Error) -> BenchError {
        BenchError::Io(e)
    }
}

/// One measured corpus.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub corpus: String,
    pub input_len: usize,
    pub compressed_len: usize,
    /// Compressed size over input size, in percent.
    pub ratio_percent: f64,
    pub compress_s: f64,
    pub decompress_s: f64,
}

/// The full run: every row passed its lossless check before timing.
#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub trials: usize,
    pub rows: Vec<BenchRow>,
}

/// Runs every corpus in order: generate, verify the roundtrip, then time
/// `trials` compress and decompress calls and keep the medians.
pub fn run_bench(specs: &[CorpusSpec], trials: usize) -> Result<BenchReport, BenchError> {
    let trials = trials.max(1);
    let mut rows = Vec::with_capacity(specs.len());
    for spec in specs {
        let name = spec.to_string();
        let data = spec.generate()?;
        let archive = gcis::compress(&data);
        if !matches!(gcis::decompress(&archive), Ok(back) if back == data) {
            return Err(BenchError::VerifyFailed { corpus: name });
        }
        log::info!("{name}: verified, timing {trials} trials");

        let mut compress_times = Vec::with_capacity(trials);
        let mut decompress_times = Vec::with_capacity(trials);
        for _ in 0..trials {
            let t0 = Instant::now();
            let a = gcis::compress(&data);
            compress_times.push(t0.elapsed().as_secs_f64());
            assert_eq!(a.len(), archive.len());
            let t0 = Instant::now();
            let back = gcis::decompress(&archive).expect("verified above");
            decompress_times.push(t0.elapsed().as_secs_f64());
            assert_eq!(back.len(), data.len());
        }
        rows.push(BenchRow {
            input_len: data.len(),
            compressed_len: archive.len(),
            // max(1) keeps the ratio of an empty input finite.
            ratio_percent: 100.0 * archive.len() as f64 / data.len().max(1) as f64,
            compress_s: median(compress_times),
            decompress_s: median(decompress_times),
            corpus: name,
        });
    }
    Ok(BenchReport { trials, rows })
}

fn median(mut values: Vec<f64>) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("timings are finite"));
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    }
}

/// How to render a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<OutputFormat, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}', expected text|csv|json")),
        }
    }
}

/// Renders a report in the chosen format, trailing newline included.
pub fn format_report(report: &BenchReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let width = report
                .rows
                .iter()
                .map(|r| r.corpus.len())
                .chain([6])
                .max()
                .unwrap();
            let mut out = format!(
                "{:<width$}  {:>12}  {:>12}  {:>9}  {:>11}  {:>13}\n",
                "corpus", "input B", "compressed B", "ratio %", "compress s", "decompress s",
            );
            for r in &report.rows {
                out.push_str(&format!(
                    "{:<width$}  {:>12}  {:>12}  {:>9.3}  {:>11.4}  {:>13.4}\n",
                    r.corpus,
                    r.input_len,
                    r.compressed_len,
                    r.ratio_percent,
                    r.compress_s,
                    r.decompress_s,
                ));
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from(
                "corpus,input_len,compressed_len,ratio_percent,compress_s,decompress_s\n",
            );
            for r in &report.rows {
                out.push_str(&format!(
                    "\"{}\",{},{},{:.6},{:.6},{:.6}\n",
                    r.corpus.replace('"', "\"\""),
                    r.input_len,
                    r.compressed_len,
                    r.ratio_percent,
                    r.compress_s,
                    r.decompress_s,
                ));
            }
            out
        }
        OutputFormat::Json => {
            let mut out =
                serde_json::to_string_pretty(report).expect("report has no unserializable values");
            out.push('\n');
            out
        }
    }
}
