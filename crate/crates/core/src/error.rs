use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("unknown basis index: {0}")]
    UnknownIndex(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("size {size} exceeds the configured cap {cap}")]
    CapExceeded { size: u64, cap: u64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("axiom violation ({axiom}): {detail}")]
    AxiomViolation { axiom: String, detail: String },
    #[error("closure did not terminate within a budget of {0} products")]
    NonTerminating(usize),
    #[error("the identity is projective, so the ring has no non-empty representation ideals")]
    OrdinaryRing,
    #[error("the complement of the ideal is infinite")]
    InfiniteComplement,
    #[error("support budget of {0} basis elements exceeded")]
    BudgetExceeded(usize),
    #[error("element is not algebraic: {0}")]
    NotAlgebraic(String),
    #[error("rank {rank} exceeds the limit {limit}")]
    RankExceeded { rank: usize, limit: usize },
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("the set is not a representation ideal: {0}")]
    NotAnIdeal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, RingError>;
