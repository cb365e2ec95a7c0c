use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not divisible")]
    NotDivisible,
    #[error("index out of range: {0}")]
    Range(String),
    #[error("invalid argument: {0}")]
    Arg(String),
    #[error("no unit combination of the two cyclotomic polynomials")]
    NoUnitCombination,
    #[error("pivot {0} is not a unit")]
    NotAUnit(String),
    #[error("entry {0} does not become integral after rescaling")]
    NonIntegralAfterRescale(String),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("shrubbery has no stem")]
    NoStem,
    #[error("inhomogeneous differential entry: {0}")]
    InhomogeneousEntry(String),
    #[error("certificate failed: {0}")]
    Certificate(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
