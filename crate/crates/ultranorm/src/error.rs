use thiserror::Error;

/// Crate-wide error type. Every fallible operation returns `Result<T>`;
/// none of the library entry points panic on malformed input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different valued fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("spanning set is rank-deficient")]
    RankDeficient,
    #[error("lattice norms degenerate over a trivially valued field")]
    TrivialValuationLattice,
    #[error("subspace must be nontrivial")]
    EmptySubspace,
    #[error("subspace must be proper")]
    FullSubspace,
    #[error("piecewise-linear data is not concavified")]
    NotConcavified,
    #[error("metrics live on different polytopes")]
    PolytopeMismatch,
    #[error("operation not supported in ambient dimension {0}")]
    UnsupportedDimension(usize),
    #[error("degenerate polytope: {0}")]
    DegeneratePolytope(String),
    #[error("invalid data: {0}")]
    BadData(String),
    #[error("degree {0} is out of range for this graded family")]
    DegreeOutOfRange(u32),
    #[error("need at least 3 samples with increasing degree")]
    TooFewSamples,
    #[error("pull-back requires d >= 2, got {0}")]
    BadPullbackDegree(u32),
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
