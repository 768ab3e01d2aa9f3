use crate::rational::{Exact, Rational, RationalParseError};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("birth must be smaller than death, got ({}, {})", Exact(.birth.as_ref()), Exact(.death.as_ref()))]
    InvalidInterval { birth: Box<Rational>, death: Box<Rational> },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("families have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("input too large for exhaustive search ({size} points, limit {limit})")]
    TooLarge { size: usize, limit: usize },
    #[error("coefficient {} is negative", Exact(.0))]
    NegativeCoefficient(Rational),
    #[error("not a diagram landscape: {0}")]
    NotADiagramLandscape(String),
    #[error("diagram is not generic: {0}")]
    NotGeneric(String),
    #[error("birth vertex {} has no neighbour", Exact(.0))]
    IsolatedVertex(Rational),
    #[error("reconstruction preconditions violated: {0}")]
    PreconditionViolated(String),
    #[error("no independent family found after {0} attempts")]
    RetryCapExceeded(usize),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid_interval(birth: &Rational, death: &Rational) -> Self {
        Error::InvalidInterval {
            birth: Box::new(birth.clone()),
            death: Box::new(death.clone()),
        }
    }

    pub(crate) fn literal(line: usize, err: RationalParseError) -> Self {
        Error::parse(line, err.to_string())
    }
}
