use thiserror::Error;

/// Errors reported by the library.
///
/// The variants line up with the CLI exit-code classes: bad input, numeric
/// failure during integration, and internal invariant violations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("numeric failure at t = {t}: {reason}")]
    Numeric { t: f64, reason: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn numeric(t: f64, reason: impl Into<String>) -> Self {
        Error::Numeric {
            t,
            reason: reason.into(),
        }
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
