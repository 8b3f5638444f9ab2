use thiserror::Error;

/// Errors raised by the engine.
///
/// [`Error::TheoremViolation`] is special: it signals an internal
/// inconsistency (an identity that must hold exactly did not), never a
/// problem with the caller's input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroDivision,
    #[error("pole at origin")]
    PoleAtOrigin,
    #[error("pole at t = {0}")]
    Pole(String),
    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,
    #[error("invalid Cartan matrix: {0}")]
    InvalidMatrix(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("rank {rank} exceeds the limit of {limit}")]
    RankLimit { rank: usize, limit: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
