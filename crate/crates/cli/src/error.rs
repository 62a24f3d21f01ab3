use std::fmt;
use std::io;
use std::path::PathBuf;

use rjv_core::{AssumptionViolation, Error as CoreError};

/// Everything that can stop a command, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    Io {
        path: PathBuf,
        source: io::Error,
    },
    /// Scenario JSON that does not parse or does not match the schema.
    Parse {
        path: PathBuf,
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    /// Well-formed input with unusable values or combinations.
    Invalid(String),
    Assumption(AssumptionViolation),
    Invariant(String),
    Csv(csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Assumption(_) => 3,
            CliError::Invariant(_) => 4,
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::Invalid(_)
            | CliError::Csv(_) => 2,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Parse {
                path,
                field,
                line,
                column,
                message,
            } => {
                write!(f, "{}", path.display())?;
                if *line > 0 {
                    write!(f, ":{line}:{column}")?;
                }
                f.write_str(": ")?;
                if !field.is_empty() && field != "." {
                    write!(f, "field `{field}`: ")?;
                }
                f.write_str(message)
            }
            CliError::Invalid(msg) => write!(f, "invalid input: {msg}"),
            CliError::Assumption(v) => write!(
                f,
                "assumption {v} fails (rerun with --allow-violations to compute anyway)"
            ),
            CliError::Invariant(msg) => write!(f, "internal consistency check failed: {msg}"),
            CliError::Csv(e) => write!(f, "csv: {e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            CliError::Csv(e) => Some(e),
            _ => None,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Assumption(v) => CliError::Assumption(v),
            CoreError::Invariant(msg) => CliError::Invariant(msg.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Csv(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
