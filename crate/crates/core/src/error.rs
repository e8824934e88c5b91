use thiserror::Error;

/// Errors raised by quiver construction and algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    UndeclaredVertex { arrow: String, vertex: String },
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("operands live over different quivers")]
    QuiverMismatch,
    #[error("truncation orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("a truncation of order 0 has no transduction")]
    OrderExhausted,
    #[error("augmentation is not invertible")]
    AugmentationNotInvertible,
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("matrix is not homogeneous of degree 1")]
    NotHomogeneous,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed graph homomorphism: {0}")]
    MalformedHom(String),
    #[error("graph homomorphism is not complete")]
    NotComplete,
    #[error("vertex `{0}` receives infinitely many arrows")]
    NonColumnFinite(String),
    #[error("vertex `{0}` receives no arrows")]
    NotReceiving(String),
    #[error("vertex `{0}` does not occur in the element")]
    NotPresent(String),
    #[error("the two sums are not equivalent within the search depth")]
    NotEquivalent,
    #[error("regularity violated: {0}")]
    RegularityViolated(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
