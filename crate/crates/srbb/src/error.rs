use thiserror::Error;

#[derive(Debug, Error)]
pub enum SrbbError {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("wrong element kind: {0}")]
    WrongKind(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not unitary (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("qubit cap exceeded: {n} > {cap}")]
    QubitCap { n: usize, cap: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, SrbbError>;
