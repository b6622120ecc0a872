use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}:{line}:{column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] lefschetz_core::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_GUARD: i32 = 4;
pub const EXIT_PRECISION: i32 = 5;
pub const EXIT_INVARIANT: i32 = 6;
pub const EXIT_IO: i32 = 7;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use lefschetz_core::Error as E;
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Parse { .. } => EXIT_PARSE,
            CliError::Usage(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                E::InvalidInput(_) | E::DimensionMismatch(_) | E::Domain(_) | E::Inconsistent(_) => EXIT_INPUT,
                E::GuardExceeded { .. } => EXIT_GUARD,
                E::Precision(_) | E::Overflow(_) => EXIT_PRECISION,
                E::InvariantViolation(_) | E::NonIntegralDegree(_) => EXIT_INVARIANT,
            },
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_PARSE => "parse",
            EXIT_GUARD => "guard",
            EXIT_PRECISION => "precision",
            EXIT_INVARIANT => "invariant",
            EXIT_IO => "io",
            _ => "input",
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
