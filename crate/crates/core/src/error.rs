use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (bad modulus, invalid generator id, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two objects over different moduli were combined.
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    /// Dimensions of a matrix, vector or coefficient list disagree.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A size guard tripped before any large allocation or enumeration.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Malformed textual input. Lines and columns are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// The two deciders disagreed during a benchmark run.
    #[error("verdict mismatch for n={n} (trial {trial}): generator={generator}, canonical={canonical}")]
    VerdictMismatch {
        n: u64,
        trial: usize,
        generator: bool,
        canonical: bool,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
