use thiserror::Error;

/// Errors raised by the exact algebra and the decision procedures built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("z vector is zero; the parameter belongs to the second branch")]
    ZeroZ,

    #[error("generators {i} and {j} do not commute")]
    NotCommuting { i: usize, j: usize },

    #[error("commuting tuple has no common x-direction; input is corrupted")]
    Inconsistent,

    #[error("rank of X is {0}; the closure of the first branch needs rank <= 1")]
    RankTooHigh(usize),

    #[error("parameter does not define a properly discontinuous action")]
    NotProper,

    #[error("dimension k must be at least 1")]
    InvalidK,

    #[error("lattice radius schedule must be non-empty and strictly increasing")]
    InvalidSchedule,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
