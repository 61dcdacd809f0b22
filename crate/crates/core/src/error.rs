use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular or has negative determinant")]
    InvalidMatrix,
    #[error("isometry is not hyperbolic")]
    NotHyperbolic,
    #[error("elliptic isometry has no fixed point on the circle")]
    NoRealFixedPoints,
    #[error("the identity has no distinguished fixed points")]
    Identity,
    #[error("two boundary points coincide")]
    DegenerateTriple,
    #[error("source and target triples have opposite cyclic order")]
    OrientationMismatch,
    #[error("word length {0} exceeds the budget")]
    BudgetExceeded(usize),
    #[error("boundary {0} is a cusp but carries a spiraling mass")]
    CuspSpiralConflict(usize),
    #[error("the lamination is empty")]
    EmptyLamination,
    #[error("two leaves cross the path at the same point")]
    AmbiguousCrossingOrder,
    #[error("planes share fewer than two boundary points")]
    DisjointPlanes,
    #[error("faces are not adjacent in the bending lamination")]
    NonAdjacentPair,
    #[error("point is not a fixed point of the isometry")]
    NotOnAxis,
    #[error("points are not achronal")]
    NotAchronal,
    #[error("sample cannot be connected by a monotone lift")]
    NotConnectible,
    #[error("all points lie on a single plane")]
    DegenerateInput,
    #[error("comparison axis does not separate faces {0} and {1}")]
    SeparationViolation(usize, usize),
    #[error("input too large: {0} points (raise the limit explicitly)")]
    TooManyPoints(usize),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
