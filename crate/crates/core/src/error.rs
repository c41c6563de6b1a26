use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("model incomplete: no value declared for monomial `{0}`")]
    ModelIncomplete(String),

    #[error("model inconsistent: {0}")]
    ModelInconsistent(String),

    #[error("oracle not polynomial of declared degree {degree}: mismatch at {point:?}")]
    NotPolynomial { degree: u32, point: Vec<i64> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// No certified route to an exact section count; callers abstain.
    #[error("vanishing not certifiable: {0}")]
    NotCertifiable(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn is_abstention(&self) -> bool {
        matches!(self, Error::NotCertifiable(_) | Error::Unsupported(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
