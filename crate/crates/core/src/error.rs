use thiserror::Error;

/// Errors raised by graph construction, the spectral solvers and the
/// experiment drivers.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad lengths, dangling endpoints, disconnected graphs.
    #[error("validation error: {0}")]
    Validation(String),

    /// An argument outside the domain of the operation (k <= 0, mesh too coarse, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The k-scan missed roots; a finer scan is needed.
    #[error("resolution error: found {found} eigenvalues below {mu_max}, expected {expected}")]
    Resolution {
        mu_max: f64,
        found: usize,
        expected: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
