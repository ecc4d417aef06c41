//! The `dwork` command line: argument handling and document rendering.
//! `run` never touches the process streams, so it can be driven from tests.

mod commands;
mod render;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

pub const DEFAULT_SEED: u64 = 20240917;

/// Exit status plus everything the process would print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "dwork",
    version,
    about = "Invariant Gauss-Manin cohomology of Dwork families"
)]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full structural report for a weight tuple
    Report(WeightsArg),
    /// Hypergeometric module data
    Hyp(HypArgs),
    /// Operators in the Weyl algebra
    Weyl {
        #[command(subcommand)]
        action: WeylAction,
    },
    /// Jacobian syzygies and the generation oracle
    Syzygy {
        #[command(flatten)]
        weights: WeightsArg,
        /// Highest degree checked by the generation oracle (default d + 4)
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Arrangement cohomology tables against the combinatorial oracle
    Arrangement {
        #[arg(long)]
        n: i64,
        /// n + 1 multiplicities for the Milnor fiber table
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
    },
    /// Run the invariant suite on one tuple or on a sweep
    Check(CheckArgs),
}

#[derive(Args, Debug)]
pub struct WeightsArg {
    /// Comma-separated positive integers w0,w1,…,wn
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub weights: Vec<i64>,
}

#[derive(Args, Debug)]
pub struct HypArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: String,
    /// Comma-separated rationals; may be empty
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub beta: String,
    /// Keep α and β as given instead of cancelling common classes
    #[arg(long)]
    pub no_cancel: bool,
    #[arg(value_enum)]
    pub action: HypAction,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum HypAction {
    Exponents,
    Operator,
    Irreducible,
}

#[derive(Subcommand, Debug)]
pub enum WeylAction {
    /// Normal form of an expression
    Parse(OpArg),
    /// Fourier transform
    Ft {
        #[command(flatten)]
        op: OpArg,
        #[arg(long, value_enum, default_value = "forward")]
        direction: DirectionArg,
    },
    /// Indicial polynomial and its roots
    Indicial {
        #[command(flatten)]
        op: OpArg,
        #[arg(long, value_enum, default_value = "zero")]
        place: PlaceArg,
    },
    /// Singular points of the leading coefficient and regularity
    Singular(OpArg),
}

#[derive(Args, Debug)]
pub struct OpArg {
    #[arg(long, allow_hyphen_values = true)]
    pub op: String,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DirectionArg {
    Forward,
    Inverse,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum PlaceArg {
    Zero,
    Infinity,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "sweep"
    )]
    pub weights: Option<Vec<i64>>,
    /// Every tuple with n ≤ max-n and entries ≤ max-weight
    #[arg(long, required_unless_present = "weights")]
    pub sweep: bool,
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, default_value_t = 3)]
    pub max_weight: u64,
    /// Seed for the randomized permutation checks
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Random permutations tried per tuple
    #[arg(long, default_value_t = 3)]
    pub samples: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKindOut {
    Usage,
    Domain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKindOut,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            kind: ErrorKindOut::Usage,
            message: message.into(),
        }
    }

    pub fn domain(message: impl ToString) -> Self {
        CliError {
            kind: ErrorKindOut::Domain,
            message: message.to_string(),
        }
    }

    fn document(&self) -> Value {
        let kind = match self.kind {
            ErrorKindOut::Usage => "usage",
            ErrorKindOut::Domain => "domain",
        };
        json!({ "error": { "kind": kind, "message": self.message } })
    }

    fn code(&self) -> u8 {
        match self.kind {
            ErrorKindOut::Usage => EXIT_USAGE,
            ErrorKindOut::Domain => EXIT_DOMAIN,
        }
    }
}

/// What a command produced: the document and whether every check in it held.
pub struct Produced {
    pub doc: Value,
    pub ok: bool,
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let err = CliError::usage(e.to_string().trim_end());
                    Outcome {
                        code: err.code(),
                        stdout: String::new(),
                        stderr: format!("{}\n", err.document()),
                    }
                }
            };
        }
    };
    match commands::dispatch(&cli.command) {
        Ok(p) => Outcome {
            code: if p.ok { EXIT_OK } else { EXIT_DOMAIN },
            stdout: if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&p.doc).expect("json"))
            } else {
                render::text(&p.doc)
            },
            stderr: String::new(),
        },
        Err(err) => Outcome {
            code: err.code(),
            stdout: String::new(),
            stderr: format!("{}\n", err.document()),
        },
    }
}
