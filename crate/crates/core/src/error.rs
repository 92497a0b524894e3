use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    Domain(String),
    /// An iterative method failed or produced a non-finite value.
    Numerical(String),
    /// A pulse schedule or CTLS configuration breaks one of its invariants.
    Config(String),
    /// The loop phase needs all three couplings to be nonzero.
    UndefinedPhase,
    /// Enantiomeric excess with `p1 + p3 == 0`.
    UndefinedExcess,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
            Error::Config(msg) => write!(f, "configuration error: {msg}"),
            Error::UndefinedPhase => f.write_str("overall phase undefined: a coupling amplitude is zero"),
            Error::UndefinedExcess => f.write_str("enantiomeric excess undefined: p1 + p3 = 0"),
        }
    }
}

impl core::error::Error for Error {}
