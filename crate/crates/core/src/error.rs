use thiserror::Error;

use crate::laurent::LaurentPoly;

/// Errors surfaced by the library.
///
/// `NotDivisible` signals an internal inconsistency: every orbit sum the
/// library divides is a polynomial, so a remainder means a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parameter set is not generic: {0}")]
    Genericity(String),

    #[error("exact division failed: nonzero remainder with {} terms", .remainder.len())]
    NotDivisible { remainder: Box<LaurentPoly> },

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("Gram matrix is ill-conditioned (condition estimate {0:.3e})")]
    Conditioning(f64),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Precondition(_) => "precondition",
            Error::Genericity(_) => "genericity",
            Error::NotDivisible { .. } => "not-divisible",
            Error::Evaluation(_) => "evaluation",
            Error::Conditioning(_) => "conditioning",
            Error::Budget(_) => "budget",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
