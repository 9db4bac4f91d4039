//! `cf-lab`: list, evaluate, transform and verify the continued-fraction
//! catalog from the command line.
//!
//! Exit codes: 0 success, 1 usage error or unknown entry, 2 convergence or
//! verification failure, 3 I/O failure.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cflab::Error;

#[derive(Parser, Debug)]
#[command(name = "cf-lab", version, about = "Continued fractions and series for pi and Catalan's constant")]
struct Cli {
    /// Largest precision the reference oracles will compute.
    #[arg(long, global = true, env = "CF_LAB_MAX_DIGITS")]
    max_digits: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog entries.
    List(ListArgs),
    /// Evaluate one catalog fraction.
    Eval(EvalArgs),
    /// Verify catalog fractions against their targets.
    Verify(VerifyArgs),
    /// Turn an alternating series into a continued fraction.
    Transform(TransformArgs),
    /// Emit per-convergent digit profiles.
    Bench(BenchArgs),
    /// Print the reference constants.
    Constants(ConstantsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ProfileFormat {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ListArgs {
    /// Glob on entry ids, e.g. 'thm*'.
    #[arg(long, env = "CF_LAB_FILTER")]
    filter: Option<String>,
    #[arg(long, value_enum, default_value = "table", env = "CF_LAB_FORMAT")]
    format: ListFormat,
}

#[derive(Args, Debug)]
struct EvalArgs {
    id: String,
    /// Parameters as `name=value,...`; entry defaults otherwise.
    #[arg(long, env = "CF_LAB_PARAMS")]
    params: Option<String>,
    /// Significant digits to print.
    #[arg(long, default_value_t = 20, env = "CF_LAB_DIGITS", value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,
    /// Term budget; the entry's budget otherwise.
    #[arg(long, env = "CF_LAB_TERMS")]
    terms: Option<usize>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Verify the whole catalog.
    #[arg(long, conflicts_with = "filter")]
    all: bool,
    /// Glob on entry ids.
    #[arg(long, env = "CF_LAB_FILTER")]
    filter: Option<String>,
    /// Digit goal for every tier.
    #[arg(long, env = "CF_LAB_DIGITS", value_parser = clap::value_parser!(u32).range(1..))]
    digits: Option<u32>,
    #[arg(long, default_value_t = 30, env = "CF_LAB_FAST_DIGITS", value_parser = clap::value_parser!(u32).range(1..))]
    fast: u32,
    #[arg(long, default_value_t = 20, env = "CF_LAB_MODERATE_DIGITS", value_parser = clap::value_parser!(u32).range(1..))]
    moderate: u32,
    #[arg(long, default_value_t = 10, env = "CF_LAB_SLOW_DIGITS", value_parser = clap::value_parser!(u32).range(1..))]
    slow: u32,
    /// Term budget for every entry.
    #[arg(long, env = "CF_LAB_TERMS")]
    terms: Option<usize>,
    #[arg(long, value_enum, default_value = "table", env = "CF_LAB_FORMAT")]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(short, long, env = "CF_LAB_OUTPUT")]
    output: Option<PathBuf>,
    /// Shift the reference value of G by this rational, e.g. 1/10^25.
    #[arg(long)]
    perturb_catalan: Option<String>,
    /// Run instances one after another.
    #[arg(long, env = "CF_LAB_SEQUENTIAL")]
    sequential: bool,
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// Named series (leibnitz, pi8, twofactor, harmonic_biproduct, knopp).
    series: String,
    #[arg(long, default_value = "I")]
    theorem: String,
    /// Check the partial-sum identity for n = 1..=N.
    #[arg(long, default_value_t = 25)]
    check: usize,
    /// Coefficients to print.
    #[arg(long, default_value_t = 6)]
    show: usize,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Glob on entry ids; every entry otherwise.
    #[arg(long, env = "CF_LAB_FILTER")]
    filter: Option<String>,
    /// Convergents per profile.
    #[arg(long, default_value_t = 100, env = "CF_LAB_TERMS", value_parser = clap::value_parser!(u64).range(10..))]
    terms: u64,
    /// Precision at which digit counts saturate.
    #[arg(long, default_value_t = 60, env = "CF_LAB_DIGITS", value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,
    /// Profile every swept parameter set, not only the defaults.
    #[arg(long)]
    sweep: bool,
    #[arg(long, value_enum, default_value = "csv", env = "CF_LAB_FORMAT")]
    format: ProfileFormat,
    #[arg(short, long, env = "CF_LAB_OUTPUT")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[arg(long, default_value_t = 30, env = "CF_LAB_DIGITS", value_parser = clap::value_parser!(u32).range(1..))]
    digits: u32,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Convergence(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Convergence(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Convergence(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::NoConvergence { .. } | Error::Breakdown { .. } | Error::Evaluation(_) => Failure::Convergence(m),
            Error::Io { .. } => Failure::Io(m),
            Error::Domain(_) | Error::Config { .. } | Error::UnknownEntry(_) | Error::Parse(_) => Failure::Usage(m),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(max) = cli.max_digits {
        cflab::numerics::constants::set_max_reference_digits(max);
    }
    let result = match cli.command {
        Command::List(a) => commands::list(a),
        Command::Eval(a) => commands::eval(a),
        Command::Verify(a) => commands::verify(a),
        Command::Transform(a) => commands::transform(a),
        Command::Bench(a) => commands::bench(a),
        Command::Constants(a) => commands::constants(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cf-lab: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
