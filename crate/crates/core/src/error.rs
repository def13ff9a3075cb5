use thiserror::Error;

use crate::series::Exponent;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    ZeroDivision,
    /// All stored terms cancelled but the value is only known modulo `h^order`.
    #[error("sign is indeterminate at truncation order h^{order}; raise the working order")]
    IndeterminateAtTruncation { order: Exponent },
    #[error("square root requires a positive element")]
    NotPositive,
    #[error("leading coefficient {0} is not the square of a rational")]
    IrrationalLeadingCoefficient(String),
    #[error("matrix is not hermitian at ({row}, {col})")]
    HermitianViolation { row: usize, col: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    SymmetryViolation { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("dimension {n} is too small (need at least {min})")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("commutator coefficient is not divisible by i*h: {0}")]
    DivisibilityFailure(String),
    #[error("observable does not satisfy the reality condition")]
    NotReal,
    #[error("phase-space index {index} out of range for d = {d}")]
    IndexOutOfRange { index: usize, d: usize },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("block transformation matrix is singular")]
    SingularTransform,
    #[error("monomial degree {degree} exceeds the moment cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("invalid state: {0}")]
    InvalidState(String),
    /// An internal cross-check failed. This always signals a bug.
    #[error("internal consistency check failed: {0}")]
    Inconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
