use thiserror::Error;

use crate::groebner::Violation;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator is not invertible modulo {0}")]
    NonInvertibleDenominator(u32),
    #[error("{0} is not a prime below 2^31")]
    BadModulus(u64),
    #[error("not a staircase: {0}")]
    NotAStaircase(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("enumeration too large: {what} exceeds guard {limit}")]
    TooLarge { what: &'static str, limit: usize },
    #[error("weight is not generic: {0}")]
    NonGenericWeight(String),
    #[error("normal-form recurrence is missing the column of {0}")]
    MissingPredecessor(String),
    #[error("coefficient table has rank below {0}")]
    RankDeficient(usize),
    #[error("invalid reduced Groebner basis: {0}")]
    InvalidBasis(Violation),
    #[error("duplicate point {0}")]
    DuplicatePoints(String),
    #[error("evaluation matrix lost rank (internal)")]
    RankCollapse,
    #[error("lattice basis is singular")]
    SingularBasis,
    #[error("found only {found} of {expected} residue classes in V_n^d")]
    ClassDeficit { expected: usize, found: usize },
    #[error("not a unit binomial: {0}")]
    NotBinomial(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("S-pair budget of {0} exhausted")]
    Timeout(usize),
    #[error("bad column subset: {0}")]
    BadSubset(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
