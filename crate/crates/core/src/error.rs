use core::fmt;

use crate::model::AssumptionViolation;

/// Errors raised by the analytic pipeline and the discrete oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A numeric input was NaN or infinite.
    NonFinite { field: &'static str },
    /// An input lies outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// A modelling assumption required by the operation does not hold.
    Assumption(AssumptionViolation),
    /// Inconsistent configuration (mode bounds, exclusive extensions, ...).
    Configuration(&'static str),
    /// A self-check against a proven result failed. Always a bug.
    Invariant(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { field } => write!(f, "non-finite value for `{field}`"),
            Error::Domain { what, value } => write!(f, "{what} (got {value})"),
            Error::Assumption(v) => write!(f, "assumption violated: {v}"),
            Error::Configuration(msg) => write!(f, "configuration error: {msg}"),
            Error::Invariant(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl From<AssumptionViolation> for Error {
    fn from(v: AssumptionViolation) -> Self {
        Error::Assumption(v)
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn finite(field: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite { field })
    }
}
