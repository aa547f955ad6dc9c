use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,

    #[error("evaluation point has coincident coordinates")]
    CoincidentCoordinates,

    #[error("denominator vanishes at the evaluation point")]
    Pole,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("insufficient precision: coefficient of u^{requested} requested, series known through u^{available}")]
    InsufficientPrecision { requested: i64, available: i64 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("level ({0},{1}) is not a basic generator level")]
    UnsupportedLevel(i64, i64),

    #[error("slot {slot} is out of range for a rank {rank} tensor")]
    InvalidSlot { slot: usize, rank: usize },

    #[error("variance mismatch: {0}")]
    VarianceMismatch(String),

    #[error("rank underflow: {0}")]
    RankUnderflow(String),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
