use thiserror::Error;

use crate::ZVec;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("ambient rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("vector has wrong length: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("zero vector not allowed here")]
    ZeroVector,
    #[error("zero cone not allowed here")]
    ZeroCone,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("ambient rank {0} exceeds the desk-scale cap {1}")]
    RankTooLarge(usize, usize),
    #[error("enumeration box of {0} points exceeds the cap {1}")]
    BoxTooLarge(usize, usize),
    #[error("arithmetic overflow in bounded enumeration")]
    EnumerationOverflow,
    #[error("matrix must be nonempty")]
    EmptyMatrix,
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("cones {first} and {second} do not intersect in a common face")]
    NotAFan { first: usize, second: usize, intersection_rays: Vec<ZVec> },
    #[error("cells {first} and {second} do not intersect in a common face")]
    NotAComplex { first: usize, second: usize },
    #[error("fan supports differ; witness point outside one support")]
    SupportMismatch { witness: ZVec },
    #[error("cone is not in the face closure of the fan")]
    ConeNotInFan,
    #[error("fan is not admissible; offending generator {0:?}")]
    NotAdmissible(ZVec),
    #[error("polynomial must have at least one term")]
    EmptyPolynomial,
    #[error("duplicate exponent in polynomial: {0:?}")]
    DuplicateExponent(ZVec),
    #[error("valuation denominator exceeds the cap of 10^6")]
    ValuationDenominatorTooLarge,
    #[error("polynomial has a coefficient with nonzero valuation")]
    NonConstantCoefficient,
    #[error("malformed nerve: {0}")]
    MalformedNerve(String),
    #[error("divisor index {0} out of range")]
    BadDivisorIndex(usize),
    #[error("pivot divisor must belong to the stratum")]
    PivotNotInStratum,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
