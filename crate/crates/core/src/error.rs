use thiserror::Error;

/// Errors raised by the enumeration, labeling and graph routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point is not representable in the given vertex basis: {0}")]
    NotRepresentable(String),

    #[error("internal invariant broken: {0}")]
    Invariant(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($fmt)+)));
        }
    };
}

pub(crate) use ensure;
