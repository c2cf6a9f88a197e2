//! `rootdeg`: constructions, verification and degree searches for
//! polynomials computing square roots and t-th roots mod p.

mod commands;
mod render;

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rootdeg::search::KernelStrategy;
use rootdeg::ErrorKind;

/// Exit statuses shared by all subcommands.
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_SEARCH_CAP: u8 = 4;
pub const EXIT_INTERNAL: u8 = 5;

/// Overrides the exhaustive-search cap (number of assignments).
pub const CAP_ENV: &str = "ROOTDEG_MAX_ASSIGNMENTS";

#[derive(Debug, Parser)]
#[command(
    name = "rootdeg",
    version,
    about = "Polynomials computing square roots and t-th roots mod p"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format; only JSON is stable.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Worker threads (0 = available parallelism).
    #[arg(long, default_value_t = 0, global = true)]
    pub threads: usize,
    /// Seed for randomized subcommands.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Omit the `run` block (thread count and timing) from the output.
    #[arg(long, global = true)]
    pub no_run_info: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    #[value(name = "3mod4")]
    ThreeMod4,
    #[value(name = "5mod8")]
    FiveMod8,
    Tth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RunMode {
    /// `f^t` over F_p
    Power,
    /// `f^(r/s)` over Q
    Binomial,
    /// `exp(f)` over Q
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Exhaustive,
    MeetInMiddle,
    Random,
}

impl From<StrategyArg> for KernelStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Exhaustive => KernelStrategy::Exhaustive,
            StrategyArg::MeetInMiddle => KernelStrategy::MeetInMiddle,
            StrategyArg::Random => KernelStrategy::Random,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an explicit root-computing polynomial and verify it.
    Construct {
        #[arg(short)]
        p: u64,
        #[arg(long, value_enum)]
        variant: Variant,
        /// Root order for `--variant tth`.
        #[arg(short, default_value_t = 3)]
        t: u64,
    },
    /// Count the residues on which a polynomial fails to compute t-th roots.
    Verify {
        #[arg(short)]
        p: u64,
        /// Coefficients, constant term first, or `@path` to read them from a file.
        #[arg(short, allow_hyphen_values = true)]
        f: String,
        #[arg(short, default_value_t = 2)]
        t: u64,
    },
    /// Exhaustive minimum degree, optionally with `e` dropped residues.
    Mindeg {
        #[arg(short)]
        p: u64,
        #[arg(short, default_value_t = 0)]
        e: usize,
        #[arg(short, default_value_t = 2)]
        t: u64,
    },
    /// Search for sign vectors zeroing the top `t` interpolant coefficients.
    Kernel {
        #[arg(short)]
        p: u64,
        /// Number of leading coefficients to cancel.
        #[arg(short, default_value_t = 1)]
        t: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        /// Maximum number of candidate vectors.
        #[arg(long, default_value_t = 1 << 26)]
        budget: u64,
    },
    /// Longest interior run of zero coefficients in a power or series of f.
    Zerorun {
        /// Coefficients of f, constant term first (rationals allowed for series).
        #[arg(long = "f", allow_hyphen_values = true)]
        f: String,
        #[arg(long, value_enum, default_value_t = RunMode::Power)]
        mode: RunMode,
        /// Prime modulus for `--mode power`.
        #[arg(short)]
        p: Option<u64>,
        /// Integer exponent for `--mode power`.
        #[arg(long = "t-pow", default_value_t = 2)]
        t_pow: u64,
        /// Rational exponent `r/s` for `--mode binomial`.
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        exponent: String,
        /// Number of series terms (default grows with s and deg f).
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Check the polynomial abc inequality for `a + b = c`.
    Abc {
        #[arg(short)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Bucket counts of `sum_i y_i g^((2i+1)j)` over half the group.
    Equidist {
        #[arg(short)]
        p: u64,
        /// Length of y when it is drawn at random.
        #[arg(short, default_value_t = 1)]
        t: usize,
        /// Explicit coefficients `y_1,...,y_t`.
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(short, default_value_t = 10)]
        k: usize,
    },
}

/// A failure carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<rootdeg::Error> for Failure {
    fn from(e: rootdeg::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Precondition => EXIT_PRECONDITION,
            ErrorKind::Parse => EXIT_PARSE,
            ErrorKind::SearchCap => EXIT_SEARCH_CAP,
            ErrorKind::Internal => EXIT_INTERNAL,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl Failure {
    pub fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: EXIT_PRECONDITION,
            message: format!("{}: {e}", path.display()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_PARSE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            print!("{}", render::render(&outcome.doc, cli.global.format));
            match outcome.violation {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(EXIT_INTERNAL)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
