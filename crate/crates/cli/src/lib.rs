//! The `constitution` command-line tool.
//!
//! Results go to stdout; snapping warnings and errors go to stderr. Exit
//! statuses: 0 success, 1 usage or parse error, 2 dimension or domain error,
//! 3 verification mismatch, 4 amendment cycle.

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use constitution_core::{AmendmentOutcome, IdealProfile, Method, Rule};
use thiserror::Error;

pub mod args;
pub mod commands;
pub mod docs;
mod text;

pub use args::{Cli, Command, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] constitution_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use constitution_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Mismatch(_) => 3,
            CliError::Core(e) => match e {
                E::Parse(_) => 1,
                E::Dimension { .. }
                | E::OutOfRange { .. }
                | E::Domain(_)
                | E::DegenerateAmendment(_)
                | E::DegenerateComparison(_)
                | E::Capacity { .. } => 2,
                E::PropertyViolation(_) => 3,
                E::Cycle { .. } => 4,
            },
        }
    }
}

pub type AmendFn = fn(&Rule, &IdealProfile, Method) -> constitution_core::Result<AmendmentOutcome>;

/// The closed-form amendment the commands use. Swappable so the verification
/// and cycle exit paths can be exercised.
#[derive(Clone, Copy)]
pub struct Engine {
    pub amend: AmendFn,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            amend: constitution_core::amend,
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(Engine::default(), args, out, err)
}

pub fn run_with<I, T>(engine: Engine, args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match commands::dispatch(engine, &cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
