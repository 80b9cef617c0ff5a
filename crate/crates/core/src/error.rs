use alloc::string::String;

/// Errors raised by the algebra layer.
///
/// The variants map onto the exit-code classes of the command line tool:
/// `Domain` and `Validation` are caller mistakes, `Guard` is a refusal to
/// run an exhaustive search past its limit, `State` is an operation applied
/// to a network in the wrong state, and `Internal` means an invariant that
/// should hold by construction was violated.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("guard refused: {0}")]
    Guard(String),
    #[error("state error: {0}")]
    State(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
