//! Command-line front end: analyze intersection arrays, generate family
//! arrays, run the verification suites, and query the concrete-graph oracle.
//!
//! Output is one JSON value per line by default; `--pretty` switches to
//! aligned text. Exit codes: 0 ok, 1 input error, 2 theorem or consistency
//! violation, 3 size limit exceeded.

mod output;
mod report;

use clap::{Parser, Subcommand};
use drg_core::catalog;
use drg_core::params::IntersectionArray;
use num::{BigInt, BigRational};

#[derive(Parser)]
#[command(name = "drg", version, about = "Distance-regular graph analysis toolkit")]
struct Cli {
    /// Emit machine-readable JSON lines (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Render human-readable tables instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Rational delta for the expansion sequences, as "p/q".
    #[arg(long, global = true, default_value = "1/9")]
    delta: String,
    /// Vertex cap for oracle work.
    #[arg(long, global = true, default_value_t = drg_core::oracle::DEFAULT_VERTEX_CAP)]
    max_n: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for an intersection array (catalog id, inline JSON, or
    /// a JSON file with --file).
    Analyze {
        input: String,
        /// Treat INPUT as a path to a JSON array file.
        #[arg(long)]
        file: bool,
        /// Also run the imprimitive pipeline (reduction chain and the
        /// diameter-specific analyses).
        #[arg(long)]
        imprimitive: bool,
    },
    /// Emit a closed-form family array with its spectrum cross-check.
    /// Usage: `family johnson <m> <d>` | `family hamming <d> <m>` |
    /// `family cocktail <m>`.
    Family { kind: String, params: Vec<u64> },
    /// Run a verification suite: tradeoff, sequences, dichotomy, oracle, all.
    Verify { suite: String },
    /// Concrete-graph oracle over a catalog id or an edge-list file.
    Oracle {
        input: String,
        /// Enumerate the automorphism group and report exact motion.
        #[arg(long)]
        motion: bool,
        /// Numeric adjacency spectrum.
        #[arg(long)]
        spectrum: bool,
        /// Verify distance-regularity and extract the array.
        #[arg(long)]
        check_array: bool,
        /// Fold by the antipodal classes and report the quotient.
        #[arg(long)]
        fold: bool,
        /// Halve (bipartite) and report the quotient.
        #[arg(long)]
        halve: bool,
    },
}

/// Error carrying the process exit code.
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }

    pub fn violation(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub fn size(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

fn parse_delta(text: &str) -> Result<BigRational, CliError> {
    let parse_int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| CliError::input(format!("bad rational component '{s}'")))
    };
    let value = match text.split_once('/') {
        Some((p, q)) => BigRational::new(BigInt::from(parse_int(p)?), BigInt::from(parse_int(q)?)),
        None => BigRational::from_integer(BigInt::from(parse_int(text)?)),
    };
    if value <= BigRational::from_integer(BigInt::from(0))
        || value >= BigRational::from_integer(BigInt::from(1))
    {
        return Err(CliError::input(format!("delta must be in (0,1), got {value}")));
    }
    Ok(value)
}

/// Resolves an analyze input to (id, array).
fn resolve_array(input: &str, from_file: bool) -> Result<(String, IntersectionArray), CliError> {
    if from_file {
        let text = std::fs::read_to_string(input)
            .map_err(|e| CliError::input(format!("cannot read {input}: {e}")))?;
        let arr = IntersectionArray::from_json(&text).map_err(CliError::input)?;
        return Ok((input.to_string(), arr));
    }
    if let Some(entry) = catalog::entry(input) {
        return Ok((entry.id.to_string(), entry.array));
    }
    if input.trim_start().starts_with('{') {
        let arr = IntersectionArray::from_json(input).map_err(CliError::input)?;
        return Ok(("inline".to_string(), arr));
    }
    Err(CliError::input(format!(
        "unknown input '{input}': expected a catalog id, inline JSON, or --file"
    )))
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let delta = parse_delta(&cli.delta)?;
    let pretty = cli.pretty;
    match &cli.command {
        Command::Analyze { input, file, imprimitive } => {
            let (id, arr) = resolve_array(input, *file)?;
            report::analyze(&id, &arr, &delta, *imprimitive, pretty)
        }
        Command::Family { kind, params } => report::family(kind, params, pretty),
        Command::Verify { suite } => report::verify(suite, pretty),
        Command::Oracle { input, motion, spectrum, check_array, fold, halve } => {
            let flags = report::OracleFlags {
                motion: *motion,
                spectrum: *spectrum,
                check_array: *check_array,
                fold: *fold,
                halve: *halve,
            };
            report::oracle(input, &flags, cli.max_n, pretty)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(&cli) {
        eprintln!("error: {}", err.message);
        std::process::exit(err.code);
    }
}
