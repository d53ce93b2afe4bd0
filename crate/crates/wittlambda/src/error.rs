//! Crate-wide error type.

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An exact division hit a non-divisible coefficient. For the Witt
    /// recursions this signals a violated integrality theorem, never a
    /// rounding situation.
    #[error("non-integral division: coefficient {coefficient} is not divisible by {divisor}")]
    NonIntegralDivision { coefficient: BigInt, divisor: BigInt },

    #[error("mismatched truncation sets: {0} vs {1}")]
    MismatchedTruncation(String, String),

    #[error("mismatched coefficient rings: {0} vs {1}")]
    MismatchedRing(String, String),

    #[error("enumeration budget exceeded: needs {needed} evaluations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("cone poset too large: 2^{cones} up-set candidates exceed budget {budget}")]
    PosetTooLarge { cones: usize, budget: u64 },

    #[error("prime {0} is not declared and no default rule covers it")]
    UndeclaredPrime(u64),

    #[error("not a lambda-ring map: {0}")]
    NotLambdaMap(String),

    #[error("polynomial {0} is not irreducible over F_{1}")]
    NotIrreducible(String, u64),

    #[error("relation set is not confluent: {0}")]
    NonConfluent(String),

    #[error("invalid ring presentation: {0}")]
    InvalidPresentation(String),

    #[error("invalid fan: {0}")]
    InvalidFan(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
