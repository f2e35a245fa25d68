use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown identifier `{name}` at position {position}")]
    UnknownIdentifier { name: String, position: usize },

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("operation requires rational entries, found parametric entry `{0}`")]
    Parametric(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("column index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("matrix has rank {rank} but {rows} rows; full row rank is required")]
    RankDeficient { rank: usize, rows: usize },

    #[error("sign of {what} (= {value}) is undecidable under the current assumptions; specialize the parameters or assume them positive")]
    UndecidableSign { what: String, value: String },

    #[error("empty interval: {0}")]
    EmptyInterval(String),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("expected a positive value, found {0}")]
    Nonpositive(String),

    #[error("kinetic order `{0}` is not an integer")]
    NonIntegerExponent(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
