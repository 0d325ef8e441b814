use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid group table: {0}")]
    InvalidTable(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i64),

    #[error("window insufficient: {0}")]
    WindowInsufficient(String),

    #[error("degree out of secondary-product range: {0}")]
    DegreeOutOfRange(String),

    #[error("UNSOLVABLE_LIFT at degree {degree}: {detail}")]
    UnsolvableLift { degree: i64, detail: String },

    #[error("chain map shift must be 0 for a mapping cone, got {0}")]
    ShiftNonzero(i64),

    #[error("resolution depth {0} too small (need at least 2)")]
    DepthTooSmall(usize),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("coefficient mismatch: {0}")]
    CoeffMismatch(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
