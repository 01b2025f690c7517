use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The CLI maps each class of failure to a distinct exit code; see the
/// table in [`crate::cli`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be prime: {0} is not")]
    NotPrime(u64),

    #[error("modulus must be a prime greater than 2 (got {0})")]
    ModulusTooSmall(u64),

    #[error("zero has no multiplicative inverse")]
    InverseOfZero,

    #[error("interpolation points must have pairwise distinct x-coordinates")]
    DuplicatePoint,

    #[error("evaluation points must be nonzero")]
    ZeroPoint,

    /// Parameter validation failure; the message names the violated constraint.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("time {time} outside the valid range 1..={periods}")]
    TimeOutOfRange { time: u64, periods: u64 },

    #[error("need at least {need} shares, got {got}")]
    InsufficientShares { need: u64, got: u64 },

    #[error("time mismatch: shares and signal must refer to one dealing time")]
    TimeMismatch,

    #[error("participant {0} appears more than once in the share set")]
    DuplicateShare(u64),

    #[error("reconstruction with the time-signal requires the dealing's public parameters")]
    MissingPublicParams,

    #[error("dealing masks {span} coefficients but the master key only covers {capacity}")]
    CapacityExceeded { span: u64, capacity: u64 },

    #[error("share, key and signal kinds must belong to one scheme variant")]
    VariantMismatch,

    #[error("enumeration of {worlds} worlds exceeds the cap of {cap}; use smaller q, n or tau")]
    EnumerationTooLarge { worlds: u128, cap: u64 },

    #[error("unknown variable selector: {0}")]
    UnknownSelector(String),

    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
