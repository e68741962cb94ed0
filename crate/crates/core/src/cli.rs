//! Command-line front end. [`run`] is a pure function from arguments and
//! standard input to a [`CommandOutcome`]; the binary only forwards it.
//!
//! Exit codes: 0 success, 1 a mathematical "no" (property false or matrix
//! rejected), 2 usage or format errors.

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::extremal::{construct_extremal, extremal_families, gamma};
use crate::matrix01::Matrix01;
use crate::oracle::{census, ScanLimits};
use crate::structure::{decompose, idempotency_index, power_witness, CanonicalDecomposition};

#[derive(Debug, Parser)]
#[command(
    name = "kidem",
    version,
    about = "k-idempotent 0-1 matrices: check, decompose, compose, census"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether A^k = A
    Check {
        #[arg(long)]
        k: u64,
        file: Option<PathBuf>,
    },
    /// Print the canonical decomposition of a k-idempotent matrix
    Decompose {
        #[arg(long)]
        k: u64,
        file: Option<PathBuf>,
    },
    /// Rebuild a matrix from a decomposition
    Compose {
        #[arg(long)]
        k: u64,
        file: Option<PathBuf>,
    },
    /// Print the maximum number of ones in a k-idempotent matrix of order N
    Gamma {
        #[arg(long)]
        n: usize,
    },
    /// List every extremal family with a representative matrix
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
    },
    /// Exhaustively verify all theorems at order N
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: u64,
        #[arg(long = "max-order-5")]
        max_order_5: bool,
    },
    /// Print the smallest k >= 2 with A^k = A, or "none"
    Index { file: Option<PathBuf> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        CommandOutcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn no(stdout: String, stderr: String) -> Self {
        CommandOutcome {
            code: 1,
            stdout,
            stderr,
        }
    }

    fn usage(stderr: impl Into<String>) -> Self {
        let mut stderr = stderr.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        CommandOutcome {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

fn read_input(file: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<String, CommandOutcome> {
    let mut text = String::new();
    let res = match file {
        Some(path) => fs::read_to_string(path).map(|t| text = t),
        None => stdin.read_to_string(&mut text).map(|_| ()),
    };
    res.map_err(|e| CommandOutcome::usage(format!("error: cannot read input: {e}")))?;
    Ok(text)
}

fn read_matrix(file: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Matrix01, CommandOutcome> {
    let text = read_input(file, stdin)?;
    Matrix01::parse_text(&text).map_err(|e| CommandOutcome::usage(format!("error: {e}")))
}

fn require_k(k: u64) -> Result<(), CommandOutcome> {
    if k < 2 {
        Err(CommandOutcome::usage(format!(
            "error: {}",
            Error::InvalidK(k)
        )))
    } else {
        Ok(())
    }
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::usage(text)
            } else {
                CommandOutcome::ok(text)
            };
        }
    };
    dispatch(cli.command, stdin).unwrap_or_else(|outcome| outcome)
}

fn dispatch(command: Command, stdin: &mut dyn Read) -> Result<CommandOutcome, CommandOutcome> {
    match command {
        Command::Check { k, file } => {
            require_k(k)?;
            let a = read_matrix(&file, stdin)?;
            Ok(match power_witness(&a, k).expect("k checked") {
                None => CommandOutcome::ok("k-idempotent\n".into()),
                Some(w) => CommandOutcome::no(
                    format!(
                        "not k-idempotent\nwitness=({},{}) power={} entry={}\n",
                        w.row, w.col, w.power, w.entry as u8
                    ),
                    String::new(),
                ),
            })
        }
        Command::Decompose { k, file } => {
            require_k(k)?;
            let a = read_matrix(&file, stdin)?;
            Ok(match decompose(&a, k) {
                Ok(d) => CommandOutcome::ok(d.to_text(k)),
                Err(Error::Structure(e)) => CommandOutcome::no(
                    format!(
                        "error={}\nwitness=({},{})\nviolation={}\n",
                        e.kind, e.row, e.col, e.violation
                    ),
                    String::new(),
                ),
                Err(e) => CommandOutcome::usage(format!("error: {e}")),
            })
        }
        Command::Compose { k, file } => {
            require_k(k)?;
            let text = read_input(&file, stdin)?;
            let (_, d) = CanonicalDecomposition::parse(&text)
                .map_err(|e| CommandOutcome::usage(format!("error: {e}")))?;
            Ok(match d.realize(k) {
                Ok(a) => CommandOutcome::ok(a.to_text()),
                Err(e @ (Error::CycleLengthInvalid { .. } | Error::ProductNotZeroOne { .. })) => {
                    CommandOutcome::no(String::new(), format!("{e}\n"))
                }
                Err(e) => CommandOutcome::usage(format!("error: {e}")),
            })
        }
        Command::Gamma { n } => {
            let g = gamma(n).map_err(|e| CommandOutcome::usage(format!("error: {e}")))?;
            Ok(CommandOutcome::ok(format!("{g}\n")))
        }
        Command::Extremal { n, k } => {
            let families = extremal_families(n, k)
                .map_err(|e| CommandOutcome::usage(format!("error: {e}")))?;
            let blocks: Vec<String> = families
                .iter()
                .map(|p| {
                    let line = p.to_line(n, k).expect("listed families are valid");
                    let matrix = construct_extremal(n, k, p).expect("listed families are valid");
                    format!("{line}\n{}", matrix.to_text())
                })
                .collect();
            Ok(CommandOutcome::ok(blocks.join("\n")))
        }
        Command::Census { n, k, max_order_5 } => {
            let limits = ScanLimits {
                allow_order_five: max_order_5,
            };
            let report =
                census(n, k, limits).map_err(|e| CommandOutcome::usage(format!("error: {e}")))?;
            Ok(if report.passed() {
                CommandOutcome::ok(report.to_text())
            } else {
                CommandOutcome::no(report.to_text(), "census: a theorem check failed\n".into())
            })
        }
        Command::Index { file } => {
            let a = read_matrix(&file, stdin)?;
            Ok(match idempotency_index(&a) {
                Some(k) => CommandOutcome::ok(format!("{k}\n")),
                None => CommandOutcome::no("none\n".into(), String::new()),
            })
        }
    }
}
