use thiserror::Error;

/// Errors produced by the ring, oracle and Hilbert-Kunz engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("characteristic mismatch: {left} vs {right}")]
    CharacteristicMismatch { left: u32, right: u32 },
    #[error("structural rules do not cover lambda_{i} * lambda_{j}")]
    NotReducible { i: u32, j: u32 },
    #[error("size limit exceeded: {requested} > {limit}")]
    SizeLimit { requested: u64, limit: u64 },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("sigma level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("no period found with mu <= {0}")]
    NoPeriodFound(u32),
    #[error("degenerate denominator in multiplicity extraction")]
    DegenerateDenominator,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
