//! Library side of the `pdiag` binary: argument resolution, job execution
//! and report rendering.

pub mod args;
pub mod render;
pub mod run;

use std::process::ExitCode;

pub use args::{parse_args, Command, Format, JobConfig};
pub use run::{emit, run, Outcome};

/// Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input
/// error, 3 enumeration budget exceeded.
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] pdiag_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(pdiag_core::Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_USAGE,
        }
    }
}

/// Runs a full command line, printing to stdout/stderr.
pub fn main_with_args<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let job = match parse_args(argv) {
        Err(clap_err) => {
            let _ = clap_err.print();
            return ExitCode::from(clap_err.exit_code() as u8);
        }
        Ok(Err(e)) => return fail(&e),
        Ok(Ok(job)) => job,
    };
    let outcome = match run(&job) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    if let Err(e) = emit(&job, &outcome) {
        return fail(&e);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: {} check failed", job.command.name());
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code())
}
