use alloc::string::String;
use core::fmt;

use crate::exprlang::{EvalError, ParseError};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    Domain(String),
    /// The result is not representable in double precision.
    Range { arg: f64 },
    /// An integrand or function produced a non-finite value.
    NonFinite { at: f64 },
    /// A series or continued fraction did not converge.
    Convergence(&'static str),
    Parse(ParseError),
    Eval(EvalError),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Range { arg } => write!(f, "range error: result overflows at argument {arg}"),
            Error::NonFinite { at } => write!(f, "non-finite value at abscissa {at}"),
            Error::Convergence(what) => write!(f, "{what} failed to converge"),
            Error::Parse(e) => write!(f, "{e}"),
            Error::Eval(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for Error {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

impl From<EvalError> for Error {
    fn from(e: EvalError) -> Self {
        Error::Eval(e)
    }
}
