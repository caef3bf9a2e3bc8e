use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("multi-index length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("multi-index of length {0} exceeds the supported maximum of 64")]
    TooLong(usize),

    #[error("invalid bit string {0:?}: expected only '0' and '1'")]
    InvalidBitString(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),

    #[error("cannot evaluate an empty sum without a known dimension")]
    EmptySum,

    #[error("unknown output format `{0}`")]
    UnknownFormat(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
