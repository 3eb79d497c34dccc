//! The `lcaf` command-line tool.
//!
//! Exit status is 0 on success, 1 when `verify` finds a mismatch and 2 for
//! usage or input errors.

pub mod bench;
pub mod formats;
pub mod gen;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bucketed::{lcaf_bucketed, select_b};
use crate::cubic::lcaf_rle_cubic;
use crate::error::{Error, Result};
use crate::geom::{lcaf_rle_binary, lcaf_rle_geometric};
use crate::oracle::lcaf_oracle;
use crate::result::LcafResult;

use bench::{BenchConfig, CSV_HEADER};
use gen::GenShape;
use verify::{solver_by_name, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "lcaf", version, about = "Longest common Abelian factor of two strings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve two plain strings.
    Lcaf(LcafArgs),
    /// Solve two run-length encoded strings.
    RleLcaf(RleLcafArgs),
    /// Write a random input file.
    Gen(GenArgs),
    /// Cross-check solvers against the brute-force oracle.
    Verify(VerifyArgs),
    /// Time a solver on random inputs; CSV on standard output.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlainAlgo {
    Oracle,
    Bucketed,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RleAlgo {
    Cubic,
    Geometric,
    Binary,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlainFormat {
    Plain,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Print a JSON report.
    #[arg(long)]
    pub json: bool,
    /// Include the witness vector and one occurrence per string.
    #[arg(long)]
    pub witness: bool,
    /// Omit the running time (`time_ns` is null).
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct LcafArgs {
    pub s: PathBuf,
    pub t: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: PlainAlgo,
    /// Alphabet size; at least the number of distinct bytes.
    #[arg(long)]
    pub sigma: Option<usize>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: PlainFormat,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
pub struct RleLcafArgs {
    pub s: PathBuf,
    pub t: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub algo: RleAlgo,
    #[command(flatten)]
    pub report: ReportArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("shape").required(true).args(["n", "m_runs"])))]
pub struct GenArgs {
    /// Length of a plain string.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of runs of an RLE string.
    #[arg(long)]
    pub m_runs: Option<usize>,
    #[arg(long)]
    pub sigma: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub max_run: u64,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 60)]
    pub n_max: usize,
    #[arg(long, default_value_t = 12)]
    pub m_max: usize,
    #[arg(long, default_value_t = 6)]
    pub max_run: u64,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    pub sigma_set: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Solvers to check: oracle, bucketed, cubic, geometric, binary.
    #[arg(long, value_delimiter = ',', default_value = "bucketed")]
    pub algos: Vec<String>,
    #[arg(long)]
    pub parallel: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// oracle, bucketed, cubic, geometric or binary.
    #[arg(long)]
    pub algo: String,
    /// String lengths for plain solvers, run counts for RLE solvers.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    pub sigma: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 6)]
    pub max_run: u64,
    /// Plain solvers: `t` is `s` shifted by this many symbols.
    #[arg(long)]
    pub planted: Option<usize>,
    /// Leave the time column empty.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    length: u64,
    parikh: &'a [u64],
    #[serde(skip_serializing_if = "Option::is_none")]
    occurrences: Option<[[u64; 2]; 2]>,
    algorithm: &'a str,
    time_ns: Option<u64>,
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String> {
    String::from_utf8(read_file(path)?)
        .map_err(|_| Error::InvalidParameter(format!("{} is not UTF-8", path.display())))
}

fn write_report(
    out: &mut dyn Write,
    args: &ReportArgs,
    algorithm: &str,
    result: &LcafResult,
    elapsed: u128,
) -> Result<()> {
    let occurrences = result
        .occurrences
        .filter(|_| args.witness)
        .map(|(s, t)| [[s.start, s.end], [t.start, t.end]]);
    let text = if args.json {
        let report = JsonReport {
            length: result.length,
            parikh: result.witness.counts(),
            occurrences,
            algorithm,
            time_ns: (!args.no_timing).then(|| elapsed.min(u128::from(u64::MAX)) as u64),
        };
        serde_json::to_string(&report).expect("plain data serializes") + "\n"
    } else {
        let mut text = format!("{}\n", result.length);
        if args.witness {
            text += &format!("parikh {}\n", result.witness);
            if let Some([[a, b], [c, d]]) = occurrences {
                text += &format!("s {a}..{b}\nt {c}..{d}\n");
            }
        }
        text
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::InvalidParameter(format!("cannot write output: {e}")))
}

fn cmd_lcaf(args: &LcafArgs, out: &mut dyn Write) -> Result<()> {
    let PlainFormat::Plain = args.format;
    let (s, t, _) = formats::parse_plain_pair(&read_file(&args.s)?, &read_file(&args.t)?, args.sigma)?;
    let start = Instant::now();
    let (name, result) = match args.algo {
        PlainAlgo::Oracle => ("oracle", lcaf_oracle(&s, &t)),
        PlainAlgo::Bucketed => ("bucketed", lcaf_bucketed(&s, &t)?),
        PlainAlgo::Auto if select_b(s.sigma()).is_some() => match lcaf_bucketed(&s, &t) {
            Ok(r) => ("bucketed", r),
            Err(Error::WordBudgetExceeded { .. } | Error::TableTooLarge { .. }) => {
                ("oracle", lcaf_oracle(&s, &t))
            }
            Err(e) => return Err(e),
        },
        PlainAlgo::Auto => ("oracle", lcaf_oracle(&s, &t)),
    };
    let elapsed = start.elapsed().as_nanos();
    write_report(out, &args.report, name, &result, elapsed)
}

fn cmd_rle_lcaf(args: &RleLcafArgs, out: &mut dyn Write) -> Result<()> {
    let (s, t, alphabet) = formats::parse_rle_pair(&read_text(&args.s)?, &read_text(&args.t)?)?;
    let algo = match args.algo {
        RleAlgo::Auto => match alphabet.len() {
            0..=2 => RleAlgo::Binary,
            3 => RleAlgo::Geometric,
            _ => RleAlgo::Cubic,
        },
        a => a,
    };
    let start = Instant::now();
    let (name, result) = match algo {
        RleAlgo::Cubic => ("cubic", lcaf_rle_cubic(&s, &t)),
        RleAlgo::Geometric => ("geometric", lcaf_rle_geometric(&s, &t)?),
        RleAlgo::Binary => ("binary", lcaf_rle_binary(&s, &t)?),
        RleAlgo::Auto => unreachable!("resolved above"),
    };
    let elapsed = start.elapsed().as_nanos();
    write_report(out, &args.report, name, &result, elapsed)
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let shape = match (args.n, args.m_runs) {
        (Some(n), None) => GenShape::Plain { n },
        (None, Some(m)) => GenShape::Rle {
            m,
            max_run: args.max_run,
        },
        _ => unreachable!("clap enforces exactly one of --n and --m-runs"),
    };
    let content = gen::gen_content(shape, args.sigma, args.seed)?;
    match &args.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(content.as_bytes())
            .map_err(|e| Error::InvalidParameter(format!("cannot write output: {e}"))),
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<bool> {
    let solvers = args
        .algos
        .iter()
        .map(|a| solver_by_name(a))
        .collect::<Result<Vec<_>>>()?;
    let config = VerifyConfig {
        trials: args.trials,
        n_max: args.n_max,
        m_max: args.m_max,
        max_run: args.max_run,
        sigma_set: args.sigma_set.clone(),
        seed: args.seed,
        parallel: args.parallel,
    };
    let report = verify::verify(&config, &solvers)?;
    let text = match &report.counterexample {
        None => format!("ok: {} trials, {} checks, no mismatch\n", report.trials, report.checks),
        Some(c) => format!("{c}\n"),
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Error::InvalidParameter(format!("cannot write output: {e}")))?;
    Ok(report.counterexample.is_none())
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let solver = solver_by_name(&args.algo)?;
    let config = BenchConfig {
        sizes: args.sizes.clone(),
        sigma: args.sigma,
        seed: args.seed,
        reps: args.reps,
        max_run: args.max_run,
        planted: args.planted,
        timing: !args.no_timing,
    };
    let rows = bench::bench(&solver, &config)?;
    let mut text = format!("{CSV_HEADER}\n");
    for row in rows {
        text += &row.to_csv();
        text.push('\n');
    }
    out.write_all(text.as_bytes())
        .map_err(|e| Error::InvalidParameter(format!("cannot write output: {e}")))
}

/// Parses `args` (program name first) and runs the command, returning the
/// exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Lcaf(a) => cmd_lcaf(a, out).map(|_| true),
        Command::RleLcaf(a) => cmd_rle_lcaf(a, out).map(|_| true),
        Command::Gen(a) => cmd_gen(a, out).map(|_| true),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Bench(a) => cmd_bench(a, out).map(|_| true),
    };
    match outcome {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_MISMATCH,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
