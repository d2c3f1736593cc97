//! Command-line front end for `sio-core`.
//!
//! Exit codes: 0 on success, 2 for usage errors, 3 for numerical failures
//! (partial output is still written), 1 for I/O errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod config;
pub mod output;

use args::{Cli, Command};
use config::{CommandKind, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 1,
        }
    }
}

pub fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Solve(a) => commands::cmd_solve(&RunConfig::from_solver_args(CommandKind::Solve, a)?),
        Command::Table(a) => commands::cmd_table(&RunConfig::from_solver_args(CommandKind::Table, a)?),
        Command::Order(a) => commands::cmd_order(&RunConfig::from_solver_args(CommandKind::Order, a)?),
        Command::Stability(a) => commands::cmd_stability(&RunConfig::from_stability_args(a)?),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
