// SPDX-License-Identifier: MIT OR Apache-2.0

use std::process::ExitCode;

use pelt_core::Error;

/// Failures of a subcommand, each tied to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read input: {0}")]
    Unreadable(String),
    #[error("non-finite values on line(s) {}", join_lines(.0))]
    NonFinite(Vec<u64>),
    #[error("{0}")]
    Infeasible(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

fn join_lines(lines: &[u64]) -> String {
    lines.iter().map(u64::to_string).collect::<Vec<_>>().join(", ")
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Usage(_) | Self::Unreadable(_) => 2,
            Self::NonFinite(_) => 3,
            Self::Infeasible(_) => 4,
            Self::Output(_) => 1,
        })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_) => Self::Usage(e.to_string()),
            Error::NonFinite { index } => Self::NonFinite(vec![index as u64 + 1]),
            Error::Io(msg) => Self::Output(msg),
            Error::EmptySeries
            | Error::InvalidTimestamps
            | Error::InvalidSegmentation(_)
            | Error::SeriesTooShort { .. }
            | Error::TooLargeForBruteForce { .. }
            | Error::InfeasibleDesign(_) => Self::Infeasible(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
