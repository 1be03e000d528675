use thiserror::Error;

/// Errors raised by the algebraic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Adams operation requires a nonzero index")]
    ZeroAdamsIndex,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("singular Gram matrix")]
    SingularGram,
    #[error("exponential requires a nilpotent argument")]
    NotNilpotent,
    #[error("limit does not exist: {0}")]
    LimitDoesNotExist(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("twisting data in {mode} mode is not supported by {operation}")]
    UnsupportedMode {
        mode: &'static str,
        operation: &'static str,
    },
    #[error("equivariant parameter required: {0}")]
    EquivariantParameterRequired(String),
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
