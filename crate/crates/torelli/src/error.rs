use thiserror::Error;

/// Errors produced by the exact-arithmetic kernels.
///
/// Every fallible operation in this crate reports one of these variants
/// rather than panicking or silently wrapping; in particular integer
/// overflow is always surfaced as [`Error::Overflow`].
#[derive(Debug, Error)]
pub enum Error {
    /// Operand shapes do not match (wrong length, non-square, odd dimension, ...).
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A documented precondition of the operation does not hold for the input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A 64-bit (or 128-bit intermediate) computation would overflow.
    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    /// An internal arithmetic identity failed to hold (divisibility, verification, ...).
    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    /// A bounded search ran out of candidates or budget without succeeding.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// The request exceeds a built-in size limit.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// Malformed user-supplied data (JSON shape, flag syntax, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The on-disk element cache could not be read or written.
    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    /// Stable machine-readable tag for the error category, used by the CLI's
    /// structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Precondition(_) => "precondition",
            Error::Overflow(_) => "overflow",
            Error::Arithmetic(_) => "arithmetic",
            Error::SearchExhausted(_) => "search-exhausted",
            Error::ResourceLimit(_) => "resource-limit",
            Error::InvalidInput(_) => "invalid-input",
            Error::Cache(_) => "cache",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
