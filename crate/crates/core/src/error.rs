use thiserror::Error;

/// Errors raised by the algebra engine and the verification harness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("element is not homogeneous of degree {expected}")]
    GradeMismatch { expected: i64 },

    #[error("left argument of a bracket must have grade 0, got {0}")]
    NonZeroGrade(i64),

    #[error("element does not telescope: its class in the functional quotient is nonzero")]
    NotTelescoping,

    #[error("lowest-order coefficient is not an invertible monomial")]
    NotInvertibleLeadingTerm,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("continued fraction did not stabilize between N={n} and N={next}")]
    StabilizationFailure { n: usize, next: usize },

    #[error("nonzero diagonal remainder at total degree {degree}")]
    NonzeroDiagonalRemainder { degree: i32 },

    #[error("linear system is singular")]
    SingularSystem,

    #[error("linear system is inconsistent: target lies outside the span")]
    Inconsistent,

    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),

    #[error("requested coefficient lies beyond the truncation order")]
    OutOfTruncation,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("cache version mismatch: {0}")]
    VersionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
