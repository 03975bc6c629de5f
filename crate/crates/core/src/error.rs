use thiserror::Error;

/// Errors raised by the algebra, semigroup and hull layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HullError {
    #[error("dimension mismatch: expected {expected}, got {actual} ({context})")]
    Dimension {
        expected: usize,
        actual: usize,
        context: String,
    },

    #[error("partition is not a congruence: op `{op}` breaks compatibility at argument tuple {tuple:?}")]
    NotACongruence { op: String, tuple: Vec<usize> },

    #[error("size refusal: {what} is {actual}, limit is {limit}")]
    Size {
        what: String,
        actual: usize,
        limit: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("map is outside the {side} idealiser: composing with element {alpha} leaves the subsemigroup")]
    NotIdealiser { side: &'static str, alpha: usize },

    #[error("empty ideal: {0}")]
    EmptyIdeal(String),

    #[error("invalid construction: {0}")]
    Construction(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl HullError {
    pub(crate) fn size(what: impl Into<String>, actual: usize, limit: usize) -> Self {
        HullError::Size {
            what: what.into(),
            actual,
            limit,
        }
    }

    pub(crate) fn dim(expected: usize, actual: usize, context: impl Into<String>) -> Self {
        HullError::Dimension {
            expected,
            actual,
            context: context.into(),
        }
    }

    /// Process exit code used by the CLI: 2 for assertion failures, 3 for
    /// size refusals, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HullError::TheoremViolation(_) => 2,
            HullError::Size { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HullError>;
