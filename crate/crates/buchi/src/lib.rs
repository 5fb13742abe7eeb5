//! Command-line front end for `buchi-core`.
//!
//! [`dispatch`] parses arguments, runs one subcommand and writes text or
//! JSON. Exit codes: 0 on success, 1 on a domain error or a failed check,
//! 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub mod args;
mod commands;
pub mod output;
pub mod parallel;

pub use commands::{compile_source, search_parallel};

/// A failure with its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn domain(e: impl std::fmt::Display) -> Self {
        CliError::Domain(e.to_string())
    }

    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

/// What a subcommand produced: the bytes to print and the exit code.
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

/// Runs `buchi` with `argv` (including the program name).
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            return if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{e}");
                2
            };
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            if out.write_all(outcome.body.as_bytes()).is_err() {
                return 1;
            }
            outcome.code
        }
        Err(e) => {
            let msg = match &e {
                CliError::Usage(m) | CliError::Domain(m) => m,
            };
            let _ = writeln!(err, "buchi: {msg}");
            e.code()
        }
    }
}
