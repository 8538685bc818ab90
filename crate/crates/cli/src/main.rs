//! Command-line front end: structural analysis, solution enumeration and
//! certification, modal diagnostics, and reproduction of the worked
//! examples, with machine-readable reports.
//!
//! Exit codes: 0 success, 2 parse/config error, 3 structural failure,
//! 4 certificate failure.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use krein_riccati::tol::Tolerances;

#[derive(Parser)]
#[command(name = "krein-riccati", version, about = "Riccati solutions via Hamiltonian invariant subspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structural checks: block identities, spectral symmetry, gap/strip,
    /// kernel criteria, resolvent decay, subordination.
    Analyze(CommonArgs),
    /// Canonical extremal solutions X+ and X-.
    Solve(CommonArgs),
    /// All sc-set solutions with order/projection/closed-loop certificates.
    Enumerate(CommonArgs),
    /// Modal-family diagnostics: growth, dichotomy witnesses, decay tables.
    Modal(CommonArgs),
    /// Certify an external solution against the canonical pair.
    Verify(VerifyArgs),
    /// Reproduce the three worked examples at desk scale.
    Examples(OutputArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Path to a JSON input: matrices {"A","B","C"} or a model spec.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline model spec JSON, alternative to --input.
    #[arg(long)]
    model: Option<String>,
    /// Cap on enumerated sc-sets.
    #[arg(long, default_value_t = 64)]
    scset_limit: usize,
    /// Seed for randomized selections; echoed into the report.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance override KEY=VAL; repeatable. Unknown keys are rejected.
    #[arg(long = "tol", value_name = "KEY=VAL")]
    tol: Vec<String>,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format. CSV is a fixed-column projection of the JSON.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Clone)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Path to the matrix JSON of the solution to certify.
    #[arg(long)]
    solution: PathBuf,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long = "tol", value_name = "KEY=VAL")]
    tol: Vec<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Error carrying the documented process exit code.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        Self { code: 2, message: msg.into() }
    }

    pub fn structure(msg: impl Into<String>) -> Self {
        Self { code: 3, message: msg.into() }
    }

    pub fn certificate(msg: impl Into<String>) -> Self {
        Self { code: 4, message: msg.into() }
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn parse_tolerances(overrides: &[String]) -> CliResult<Tolerances> {
    let mut tols = Tolerances::default();
    for item in overrides {
        let (key, val) = item
            .split_once('=')
            .ok_or_else(|| CliError::parse(format!("--tol expects KEY=VAL, got {item}")))?;
        let val: f64 = val
            .parse()
            .map_err(|_| CliError::parse(format!("tolerance value not a number: {item}")))?;
        tols.set(key.trim(), val).map_err(CliError::parse)?;
    }
    Ok(tols)
}

fn read_input_text(args: &CommonArgs) -> CliResult<String> {
    match (&args.input, &args.model) {
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display()))),
        (None, Some(inline)) => Ok(inline.clone()),
        (Some(_), Some(_)) => Err(CliError::parse("give either --input or --model, not both")),
        (None, None) => Err(CliError::parse("an input is required: --input FILE or --model JSON")),
    }
}

fn write_report(output: &Option<PathBuf>, body: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn init_threads() {
    let threads = std::env::var("KREIN_RICCATI_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok());
    if let Some(n) = threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    init_threads();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => commands::analyze(&args),
        Command::Solve(args) => commands::solve(&args),
        Command::Enumerate(args) => commands::enumerate(&args),
        Command::Modal(args) => commands::modal(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Examples(args) => commands::examples(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
