use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed quadratic fields: sqrt({0}) and sqrt({1})")]
    FieldMismatch(u64, u64),

    #[error("invalid quadratic field discriminant {0}: must be a positive squarefree integer")]
    BadDiscriminant(u64),

    #[error("hyperplane normal gamma must be nonzero")]
    ZeroGamma,

    #[error("lattice vector must be nonzero")]
    ZeroVector,

    #[error("generators are linearly dependent")]
    DependentGenerators,

    #[error("invalid lattice: {0}")]
    BadLattice(String),

    #[error("invalid monoid descriptor: {0}")]
    BadDescriptor(String),

    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("truncation overflow: result needs weight {needed} but max degree is {max}")]
    TruncationOverflow { needed: i64, max: i64 },

    #[error("label {0} is not on the line Z*alpha")]
    BadLabel(String),

    #[error("vector has irrational coordinates; vertex operators are defined over Q")]
    NotRational,

    #[error("monoid is not parabolic-type")]
    NotParabolic,

    #[error("module labels of different types")]
    MixedTypes,

    #[error("config error: {0}")]
    Config(String),

    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
