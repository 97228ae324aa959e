use thiserror::Error;

/// Errors raised by the library and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A state or configuration file could not be understood.
    #[error("parse error: {0}")]
    Parse(String),

    /// The numeric rank of K is not one of 0, 1, 3 or 6 at the requested tolerance.
    #[error("unclassifiable at tolerance {tol:e}: numeric rank {rank}, singular values {singular_values:?}")]
    Unclassifiable {
        rank: usize,
        tol: f64,
        singular_values: [f64; 6],
    },

    /// The request would exceed the supported dense dimensions.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A sampled state broke one of the record range invariants.
    #[error("invariant violated: {message}; state: {state}")]
    InvariantViolation { message: String, state: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
