use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: String, modulus: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eta quotient has leading exponent {numerator}/24, which is not a positive integer")]
    BadEtaLeadingPower { numerator: i64 },

    #[error("series bounds differ: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("singular model: discriminant is zero")]
    SingularCurve,

    #[error("prime {prime} exceeds the point-counting bound {bound}")]
    EnumerationBound { prime: u64, bound: u64 },

    #[error("not rank one: eigenspace still has dimension {dimension} after primes up to {bound}")]
    NotRankOne { dimension: usize, bound: u64 },

    #[error("no eigenvector: the eigenvalue data cuts out the zero space (last prime {prime})")]
    NoEigenvector { prime: u64 },

    #[error("not divisible by the augmentation cycle: corestriction is nonzero at index {index}")]
    NotDivisible { index: usize },

    #[error("incompatible group ring elements: {0}")]
    Incompatible(String),

    #[error("resource budget exceeded: {needed} evaluations requested, budget is {budget}")]
    Budget { needed: u64, budget: u64 },

    #[error("pattern error: {0}")]
    Pattern(String),
}

pub type Result<T> = std::result::Result<T, Error>;
