use std::io;

use slabshift_core::Error as CoreError;

/// Everything that can stop a command, mapped onto process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("quadrature did not converge: best estimate {best:e}, error bound {err_bound:e}")]
    Convergence { best: f64, err_bound: f64 },
    #[error("{failed} of {total} sweep points failed")]
    PartialSweep { failed: usize, total: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Convergence { .. } => 3,
            CliError::PartialSweep { .. } => 4,
            CliError::Io(_) | CliError::Output(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Convergence { best, err_bound } => CliError::Convergence { best, err_bound },
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
