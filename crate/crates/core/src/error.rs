use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed search domain (empty, non-finite, or `lower >= upper` somewhere).
    #[error("invalid domain: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A caller violated a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The objective returned NaN or an infinity.
    #[error("objective `{function}` returned non-finite value {value} at {point:?}")]
    NonFiniteObjective {
        function: String,
        value: f64,
        point: Vec<f64>,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// True for errors caused by bad user input rather than a failure at run time.
    pub fn is_config_error(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Domain(_))
    }
}
