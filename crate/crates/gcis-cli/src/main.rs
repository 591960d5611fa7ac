//! The `gcis` command line tool: compress, decompress, inspect, verify and
//! benchmark.
//!
//! Every verb reads its whole input into memory before working; nothing is
//! streamed, so inputs are bounded by available RAM. `-` stands for stdin
//! or stdout. Logging goes to stderr and is controlled by the `GCIS_LOG`
//! environment variable (for example `GCIS_LOG=debug`).
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O error, 3 corrupt archive,
//! 4 verification mismatch.

use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gcis_bench::{format_report, run_bench, BenchError, CorpusSpec, OutputFormat};

#[derive(Parser)]
#[command(
    name = "gcis",
    version,
    about = "Grammar compression by induced suffix sorting",
    long_about = "Grammar compression by induced suffix sorting.\n\n\
        Inputs are read fully into memory; pass '-' for stdin or stdout.\n\
        Set GCIS_LOG=debug to watch the reduction rounds on stderr.\n\n\
        Exit codes: 0 success, 1 usage error, 2 I/O error, 3 corrupt\n\
        archive, 4 verification mismatch."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into an archive.
    Compress {
        /// Input file, or '-' for stdin.
        input: PathBuf,
        /// Output file, or '-' for stdout.
        output: PathBuf,
        /// Cap the number of reduction rounds.
        #[arg(long, value_name = "N")]
        max_levels: Option<usize>,
        /// Keep reducing even when a round would grow the encoding.
        #[arg(long)]
        no_greedy_stop: bool,
    },
    /// Expand an archive back into the original bytes.
    Decompress {
        /// Archive file, or '-' for stdin.
        input: PathBuf,
        /// Output file, or '-' for stdout.
        output: PathBuf,
    },
    /// Describe an archive: per-level rule counts, sizes and the ratio.
    Stat {
        /// Archive file, or '-' for stdin.
        input: PathBuf,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// Compress and decompress a file in memory and compare the bytes.
    Verify {
        /// Input file, or '-' for stdin.
        input: PathBuf,
    },
    /// Time compression over generated corpora or local files.
    Bench {
        /// Corpus spec: fib:k=30, tm:n=1048576,
        /// rand:n=65536,sigma=256,seed=7 or file:path. Repeatable.
        #[arg(long = "corpus", value_name = "SPEC", required = true)]
        corpus: Vec<CorpusSpec>,
        /// Timed runs per corpus; the median is reported.
        #[arg(long, default_value_t = 3, value_name = "N")]
        trials: usize,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
}

/// A failed run: what to print and which exit code to return.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: String) -> Failure {
        Failure { code: 2, message }
    }

    fn corrupt(message: String) -> Failure {
        Failure { code: 3, message }
    }

    fn mismatch(message: String) -> Failure {
        Failure { code: 4, message }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(
        env_logger::Env::new()
            .filter("GCIS_LOG")
            .write_style("GCIS_LOG_STYLE"),
    )
    .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; anything else is a
            // usage error.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gcis: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compress {
            input,
            output,
            max_levels,
            no_greedy_stop,
        } => {
            let data = read_input(&input)?;
            let opts = gcis::BuildOptions {
                greedy_stop: !no_greedy_stop,
                max_levels,
            };
            let archive = gcis::compress_with(&data, &opts);
            log::info!(
                "compressed {} bytes to {} ({:.3}%)",
                data.len(),
                archive.len(),
                ratio_percent(archive.len(), data.len())
            );
            write_output(&output, &archive)
        }
        Command::Decompress { input, output } => {
            let archive = read_input(&input)?;
            let data = gcis::decompress(&archive).map_err(archive_failure)?;
            write_output(&output, &data)
        }
        Command::Stat { input, format } => {
            let archive = read_input(&input)?;
            let (_, stats) = gcis::decompress_with_stats(&archive).map_err(archive_failure)?;
            print_bytes(format_stats(&stats, format).as_bytes())
        }
        Command::Verify { input } => {
            let data = read_input(&input)?;
            let archive = gcis::compress(&data);
            let back = gcis::decompress(&archive).map_err(|e| {
                Failure::mismatch(format!("fresh archive failed to decompress: {e}"))
            })?;
            if back != data {
                return Err(Failure::mismatch(
                    "decompressed output differs from the input".to_string(),
                ));
            }
            println!(
                "ok: {} bytes compress to {} bytes ({:.3}%) and decompress losslessly",
                data.len(),
                archive.len(),
                ratio_percent(archive.len(), data.len())
            );
            Ok(())
        }
        Command::Bench {
            corpus,
            trials,
            format,
        } => {
            let report = run_bench(&corpus, trials).map_err(bench_failure)?;
            print_bytes(format_report(&report, format).as_bytes())
        }
    }
}

fn ratio_percent(compressed: usize, original: usize) -> f64 {
    100.0 * compressed as f64 / original.max(1) as f64
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin()
            .lock()
            .read_to_end(&mut buf)
            .map_err(|e| Failure::io(format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Failure::io(format!("reading {}: {e}", path.display())))
    }
}

fn write_output(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    if path == Path::new("-") {
        print_bytes(bytes)
    } else {
        fs::write(path, bytes).map_err(|e| Failure::io(format!("writing {}: {e}", path.display())))
    }
}

fn print_bytes(bytes: &[u8]) -> Result<(), Failure> {
    io::stdout()
        .lock()
        .write_all(bytes)
        .map_err(|e| Failure::io(format!("writing stdout: {e}")))
}

fn archive_failure(e: gcis::Error) -> Failure {
    if e.is_corrupt_archive() {
        Failure::corrupt(format!("corrupt archive: {e}"))
    } else {
        Failure::io(e.to_string())
    }
}

fn bench_failure(e: BenchError) -> Failure {
    match e {
        BenchError::BadSpec { .. } | BenchError::Corpus(_) => Failure {
            code: 1,
            message: e.to_string(),
        },
        BenchError::Io(_) => Failure::io(e.to_string()),
        BenchError::VerifyFailed { .. } => Failure::mismatch(e.to_string()),
    }
}

fn format_stats(stats: &gcis::DecodeStats, format: OutputFormat) -> String {
    let ratio = ratio_percent(stats.archive_len, stats.original_len);
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            out.push_str(&format!("archive          {} B\n", stats.archive_len));
            out.push_str(&format!("original         {} B\n", stats.original_len));
            out.push_str(&format!("ratio            {ratio:.3} %\n"));
            out.push_str(&format!("levels           {}\n", stats.level_count));
            out.push_str(&format!(
                "final text       {} symbols\n",
                stats.final_text_len
            ));
            out.push_str(&format!("rule lookups     {}\n", stats.body_lookups));
            out.push_str(&format!("symbols written  {}\n", stats.symbols_written));
            if !stats.levels.is_empty() {
                out.push_str("\nlevel  rules  expanded symbols  encoded B\n");
                for l in &stats.levels {
                    out.push_str(&format!(
                        "{:>5}  {:>5}  {:>16}  {:>9}\n",
                        l.level, l.sigma, l.text_len, l.encoded_bytes
                    ));
                }
            }
            out
        }
        OutputFormat::Csv => {
            // One row per level, with the archive-wide figures repeated so
            // the table stands alone.
            let mut out = String::from(
                "level,rules,expanded_len,encoded_bytes,archive_len,original_len,ratio_percent\n",
            );
            for l in &stats.levels {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{:.6}\n",
                    l.level,
                    l.sigma,
                    l.text_len,
                    l.encoded_bytes,
                    stats.archive_len,
                    stats.original_len,
                    ratio
                ));
            }
            out
        }
        OutputFormat::Json => {
            let levels: Vec<serde_json::Value> = stats
                .levels
                .iter()
                .map(|l| {
                    serde_json::json!({
                        "level": l.level,
                        "rules": l.sigma,
                        "expanded_len": l.text_len,
                        "encoded_bytes": l.encoded_bytes,
                    })
                })
                .collect();
            let value = serde_json::json!({
                "archive_len": stats.archive_len,
                "original_len": stats.original_len,
                "ratio_percent": ratio,
                "level_count": stats.level_count,
                "final_text_len": stats.final_text_len,
                "body_lookups": stats.body_lookups,
                "symbols_written": stats.symbols_written,
                "levels": levels,
            });
            let mut out =
                serde_json::to_string_pretty(&value).expect("stats have no unserializable values");
            out.push('\n');
            out
        }
    }
}
