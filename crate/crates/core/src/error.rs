use thiserror::Error;

/// Errors produced by the propagation, link-budget and coverage models.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical quantity was outside its mathematical domain (e.g. a non-positive power).
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller supplied an invalid argument combination.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Input lies outside the range where the empirical model is defined.
    #[error("outside model validity: {0}")]
    ModelValidity(String),

    /// Malformed tabular input. `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    /// Query outside an interpolation table's span.
    #[error("interpolation error: {0}")]
    Interpolation(String),

    /// Inconsistent deployment or simulation configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Root finding or another numeric procedure failed.
    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
