use thiserror::Error;

/// Errors raised by the exact arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("context error: {0}")]
    Context(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// `p / q` has no polynomial quotient.
    #[error("not divisible: remainder has leading monomial {witness}")]
    NotDivisible { witness: String },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    Shape { rows: usize, cols: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("size error: {0}")]
    Size(String),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),

    /// The operator result is not `b(s)` times the shifted base.
    #[error("not a b-function identity: {0}")]
    NotBIdentity(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, ExactError>;
