use thiserror::Error;

use crate::formula::ParseError;

/// Errors raised by the field, unit, enumeration, and formula layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} listed more than once")]
    DuplicatePrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("fields {0} and {1} are not comparable by generator inclusion")]
    IncomparableFields(String, String),
    #[error("sign vector does not match field {0}")]
    SignMismatch(String),
    #[error("square root of {value} needs the generator sqrt({prime})")]
    MissingGenerator { value: u64, prime: u64 },
    #[error("invalid basis label `{0}`")]
    InvalidLabel(String),
    #[error("{0} is a perfect square")]
    PerfectSquare(u64),
    #[error("operation requires a real field, got {0}")]
    ImaginaryField(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid element encoding: {0}")]
    Encoding(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unbound domain `{0}`")]
    UnboundDomain(String),
    #[error("malformed witness chain: {0}")]
    MalformedChain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
