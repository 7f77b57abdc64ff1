use thiserror::Error;

use crate::coeff::Ring;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: Ring, right: Ring },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit in the integers")]
    NotAUnit(String),
    #[error("{value} is not divisible by {divisor}")]
    NotDivisible { value: String, divisor: u64 },
    #[error("characteristic {modulus} divides {divisor}")]
    Characteristic { modulus: u64, divisor: u64 },
    #[error("generator count mismatch: {left} vs {right}")]
    GeneratorMismatch { left: usize, right: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("term count {count} exceeds the cap of {cap} terms")]
    TermCapExceeded { count: usize, cap: usize },
    #[error("commutativity violation: {0}")]
    CommutativityViolation(String),
    #[error("arity error: {0}")]
    Arity(String),
    #[error("randomness failure: {0}")]
    Randomness(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
}
