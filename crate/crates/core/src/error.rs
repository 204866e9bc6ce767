//! Crate-wide error type.

use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by library operations.
///
/// `InexactDivision` signals an internal inconsistency (a recursion or
/// reduction bug); everything else is an input or precondition problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// The p-adic valuation does not extend uniquely to the requested field.
    UnsupportedField(String),
    DivisionByZero,
    /// Polynomial division left a nonzero remainder where an exact quotient
    /// was required.
    InexactDivision,
    /// Some Weierstrass coefficient has negative valuation at p.
    NonIntegralModel(String),
    /// The operation needs a model with a1 = a2 = a3 = 0.
    NotShortForm,
    NotSupersingular(String),
    PrecisionTooLow(String),
    /// mu must be a positive rational or infinity.
    InvalidMu(String),
    PreconditionViolated(String),
    InvalidInput(String),
    Parse(String),
}

impl Error {
    /// Process exit code for CLI reporting: 2 for internal inconsistencies,
    /// 1 for validation and precondition failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InexactDivision => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedField(msg) => write!(f, "unsupported field: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InexactDivision => write!(f, "inexact polynomial division"),
            Error::NonIntegralModel(msg) => write!(f, "non-integral model: {msg}"),
            Error::NotShortForm => write!(f, "curve is not in short Weierstrass form"),
            Error::NotSupersingular(msg) => write!(f, "not supersingular: {msg}"),
            Error::PrecisionTooLow(msg) => write!(f, "precision too low: {msg}"),
            Error::InvalidMu(msg) => write!(f, "invalid mu: {msg}"),
            Error::PreconditionViolated(msg) => write!(f, "precondition violated: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
