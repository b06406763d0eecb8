use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} of size {size} exceeds the limit of {limit}{hint}")]
    Capacity {
        what: &'static str,
        size: u128,
        limit: u64,
        hint: &'static str,
    },

    #[error("{0}")]
    Usage(String),

    #[error("construction failed after {attempts} attempts (best bias achieved {best_bias})")]
    ConstructionFailure { attempts: u32, best_bias: f64 },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("certification mismatch: stored epsilon {stored:?}, recomputed bias {recomputed}")]
    CertificationMismatch { stored: Option<f64>, recomputed: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, size: u128, limit: u64) -> Self {
        Error::Capacity {
            what,
            size,
            limit,
            hint: "",
        }
    }

    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension { .. } | Error::InvalidParameter(_) => "structural",
            Error::Capacity { .. } => "capacity",
            Error::Usage(_) => "usage",
            Error::ConstructionFailure { .. } => "construction_failure",
            Error::Parse { .. } => "parse",
            Error::CertificationMismatch { .. } => "certification",
            Error::Io(_) => "io",
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Dimension { .. } | Error::InvalidParameter(_) | Error::Usage(_) | Error::Parse { .. } => 2,
            Error::Capacity { .. } => 3,
            Error::ConstructionFailure { .. } | Error::CertificationMismatch { .. } => 4,
            Error::Io(_) => 1,
        }
    }
}
