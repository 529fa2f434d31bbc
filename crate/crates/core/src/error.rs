use thiserror::Error;

/// Errors raised by the numerical engines and the model loaders.
///
/// Quadrature or series non-convergence is normally reported through the
/// `converged` flag of a result; `NonConvergence` is only used where no
/// partial value can be returned.
#[derive(Debug, Error)]
pub enum CasimirError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("model capability error: {0}")]
    Capability(String),

    #[error("singularity: {0}")]
    Singular(String),

    #[error("did not converge: {0}")]
    NonConvergence(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CasimirError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(CasimirError::Domain(msg.into()))
}
