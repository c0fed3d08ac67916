use thiserror::Error;

/// Errors surfaced by evaluation routines.
///
/// Numerical routines in this crate fail loudly rather than returning NaN:
/// silent NaN propagation tends to mask parameter-validation bugs in callers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("gamma pole: {0} is within 1e-14 of a non-positive integer")]
    GammaPole(String),

    #[error("argument outside analyticity strip: {0}")]
    StripViolation(String),

    #[error("series or iteration failed to converge: {0}")]
    Convergence(String),

    #[error("hypergeometric series diverges: {0}")]
    Divergence(String),

    #[error("unsupported dimension: {0}")]
    Dimension(String),

    #[error("singular argument: {0}")]
    Singularity(String),

    #[error("recurrent process has no finite free potential: {0}")]
    Recurrent(String),

    #[error("time grid must be strictly increasing")]
    NonMonotoneGrid,

    #[error("no event records to summarise")]
    EmptyRecords,

    #[error("incompatible shapes: {0}")]
    ShapeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
