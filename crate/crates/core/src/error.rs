use thiserror::Error;

/// Library-wide error type.
///
/// The variants deliberately mirror the failure classes the CLI maps to
/// distinct exit codes: validation of input data, arity/endpoint mismatches
/// in algebraic operations, resource-bound refusals, and requests for data
/// that is not enumerable.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data failed structural validation (bad table shape, broken
    /// monoid/rig law, out-of-range index).  `path` is a JSON-pointer-ish
    /// locator when the data came from a descriptor file.
    #[error("validation error at {path}: {message}")]
    Validation { path: String, message: String },

    /// Two pieces of data that must agree (arities, endpoints, rings) do not.
    #[error("arity mismatch: {0}")]
    Arity(String),

    /// An operation was asked to cross a configured resource bound.
    #[error("resource bound exceeded: {0}")]
    Resource(String),

    /// A carrier or hom-set that must be enumerated is not enumerable.
    #[error("not enumerable: {0}")]
    NotEnumerable(String),

    /// A structurally ill-formed formal expression (non-composable maps,
    /// rewrite pattern outside the supported grammar, step budget exhausted).
    #[error("expression structure error: {0}")]
    Structure(String),

    /// A construction refused to proceed because an input is provisional
    /// (its congruence closure did not stabilize at the requested cutoff).
    #[error("provisional input: {0}")]
    Provisional(String),

    /// The requested construction is recognized but not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { path: path.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
