use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("cannot pair vectors from different lattices ({0})")]
    LatticeMismatch(String),

    #[error("{0} must be nonzero")]
    ZeroVector(&'static str),

    #[error("cone is not strictly convex: it contains the line through ({})", witness.join(","))]
    NotStrictlyConvex { witness: Vec<String> },

    #[error("weight {weight:?} is not in the weight monoid of the cone")]
    OutsideMonoid { weight: Vec<String> },

    #[error("invalid Cartan data: {0}")]
    Cartan(String),

    #[error("invalid datum: {0}")]
    Datum(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
