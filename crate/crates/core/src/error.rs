use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KpfError {
    #[error("invalid weight: entries sum to {0}, expected 0")]
    InvalidWeight(i64),
    #[error("invalid flow: {0}")]
    InvalidFlow(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("empty instance: height {0:?} has a negative entry")]
    EmptyInstance(Vec<i64>),
    #[error("incomparable instances: {0}")]
    IncomparableInstances(String),
    #[error("not a partial order: elements {0} and {1} are related both ways")]
    NotAPartialOrder(usize, usize),
    #[error("poset is not ranked")]
    NotRanked,
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("matrix powers did not converge within {0} squarings")]
    NoConvergence(usize),
    #[error("singular linear system")]
    SingularSystem,
    #[error("logarithm of an empty count")]
    LogOfZero,
    #[error("cardinality mismatch: {0} vs {1}")]
    CardinalityMismatch(usize, usize),
}

impl KpfError {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            KpfError::InvalidWeight(_) => "invalid-weight",
            KpfError::InvalidFlow(_) => "invalid-flow",
            KpfError::InvalidInput(_) => "invalid-input",
            KpfError::EmptyInstance(_) => "empty-instance",
            KpfError::IncomparableInstances(_) => "incomparable-instances",
            KpfError::NotAPartialOrder(_, _) => "not-a-partial-order",
            KpfError::NotRanked => "not-ranked",
            KpfError::DimensionMismatch { .. } => "dimension-mismatch",
            KpfError::NoConvergence(_) => "no-convergence",
            KpfError::SingularSystem => "singular-system",
            KpfError::LogOfZero => "log-of-zero",
            KpfError::CardinalityMismatch(_, _) => "cardinality-mismatch",
        }
    }
}

pub type Result<T> = std::result::Result<T, KpfError>;
