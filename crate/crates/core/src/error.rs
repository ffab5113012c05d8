//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension must be positive")]
    InvalidDimension,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("convex combination is not normalized: max coefficient must be 0")]
    NotNormalized,

    #[error("operation requires a nonempty point set")]
    EmptySet,

    #[error("point is not a member of the hull")]
    NotAMember,

    #[error("matrix must be square for this operation")]
    NotSquare,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("leading term of the zero polynomial is undefined")]
    ZeroPolynomial,

    #[error("row {0} has no finite entry")]
    RowAllBottom(usize),

    #[error("no assignment saturating the rows exists")]
    InfeasibleAssignment,

    #[error("Hall condition fails; violator on the left side: {0:?}")]
    HallViolation(Vec<usize>),

    #[error("expected {expected} points, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("class {0} is empty or its hull misses the target")]
    ClassMembershipFailure(usize),

    #[error("no witness found in the intersection of C and class {0}")]
    WitnessNotFound(usize),

    #[error("supplied witness {0} fails membership validation")]
    WitnessInvalid(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("condition (*) fails for coordinate subset {0:?}")]
    StarViolated(Vec<usize>),

    #[error("point set is not generic; rerun with perturbation enabled")]
    NonGeneric,

    #[error("perturbation retries exhausted without reaching a generic set")]
    PerturbationExhausted,

    #[error("retry budget exhausted: {0}")]
    RetryExhausted(String),

    #[error("oracle pattern space {0} exceeds the hard cap {1}")]
    PatternSpaceExceeded(u128, u128),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
