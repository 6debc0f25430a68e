use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error; usage
/// errors live in the CLI layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("{x} is divisible by the modulus {p}")]
    NotInvertible { x: u64, p: u64 },
    #[error("tuple length u would be {0}, must be at least 1")]
    NonPositiveU(u64),
    #[error("only {available} primes up to {height}, need {needed}")]
    EmptyBase {
        available: usize,
        needed: usize,
        height: u64,
    },
    #[error("operands live in different fields (p = {left} and p = {right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("growth stalled at step {step} with |S| = {size}")]
    Stalled { step: usize, size: usize },
    #[error("iteration cap of {0} reached")]
    IterationCap(usize),
    #[error("theta must be positive, got {0}")]
    NonPositiveTheta(f64),
    #[error("beta must be positive")]
    NonPositiveBeta,
    #[error("bilinear bound violated at a = {a}: |f(a)| / (sqrt(p)|T|) = {ratio}")]
    BoundViolated { a: u64, ratio: f64 },
    #[error("{} residues unreachable (first: {:?})", .0.len(), .0.first())]
    Unreachable(Vec<u64>),
    #[error("term budget exponent 2^{0} is too large to materialize")]
    BudgetTooLarge(u64),
    #[error("oracle disagrees at residue {residue}: layered N = {layered}, oracle N = {oracle:?}")]
    OracleMismatch {
        residue: u64,
        layered: u32,
        oracle: Option<u32>,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ZeroInverse => "ZeroInverse",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::NonPositiveU(_) => "NonPositiveU",
            Error::EmptyBase { .. } => "EmptyBase",
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::Stalled { .. } => "Stalled",
            Error::IterationCap(_) => "IterationCap",
            Error::NonPositiveTheta(_) => "NonPositiveTheta",
            Error::NonPositiveBeta => "NonPositiveBeta",
            Error::BoundViolated { .. } => "BoundViolated",
            Error::Unreachable(_) => "Unreachable",
            Error::BudgetTooLarge(_) => "BudgetTooLarge",
            Error::OracleMismatch { .. } => "OracleMismatch",
            Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
