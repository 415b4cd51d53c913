use std::process::ExitCode;

use thiserror::Error;

/// Failures that stop a command before it produces a verdict. All of them
/// map to exit status 2; property violations are not errors but outcomes.
#[derive(Error, Debug)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("input: {0}")]
    Input(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(2)
    }
}
