//! The `picod` command line: argument parsing and the five subcommands.
//!
//! Everything here returns an [`Outcome`] instead of printing, so the binary
//! is a thin wrapper and the commands can be tested in-process.

pub mod commands;
pub mod document;
pub mod render;

use std::ffi::OsString;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Usage = 1,
    Infeasible = 2,
    Internal = 3,
    VerifyFailed = 4,
    Unknown = 5,
}

/// What a command wants written and the status to exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: Exit,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome::with(Exit::Ok, stdout)
    }

    pub fn with(code: Exit, stdout: String) -> Self {
        Outcome { code, stdout, stderr: String::new() }
    }

    pub fn fail(code: Exit, message: impl fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("picod: {message}\n"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Ascii,
    Tsv,
}

/// An inclusive range written `A:B`, or a single value `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for Span {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
        let (lo, hi) = match text.split_once(':') {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let n = num(text)?;
                (n, n)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}:{hi}"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Debug, Parser)]
#[command(name = "picod", version, about = "Secure decentralized pliable index codes on circular side information")]
pub struct Cli {
    /// Output format. Each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the randomized fallback search.
    #[arg(long, global = true, env = "PICOD_SEED")]
    pub seed: Option<u64>,
    /// Worker threads for `table` and `oracle`.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the feasibility class of an instance.
    Classify { m: usize, s: usize },
    /// Construct and verify a scheme.
    Build { m: usize, s: usize },
    /// Check a scheme document.
    Verify { path: PathBuf },
    /// Built lengths against the closed forms, one row per feasible instance.
    Table {
        /// Range of s.
        #[arg(long = "s", default_value = "5:25")]
        s: Span,
        /// Range of m. Defaults to s+1..8s for each s.
        #[arg(long = "m")]
        m: Option<Span>,
    },
    /// Exhaustive minimum-length search (m <= 10).
    Oracle {
        m: usize,
        s: usize,
        /// Largest dimension to search. Defaults to m.
        #[arg(long)]
        max_dim: Option<usize>,
    },
}

/// Parses `args` (program name first) and runs the chosen command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: Exit::Usage, stdout: String::new(), stderr: text }
            } else {
                Outcome::ok(text)
            };
        }
    };
    commands::dispatch(&cli)
}
