use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("expression mixes degrees {first} and {second}")]
    MixedDegrees { first: usize, second: usize },

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("{path}: {msg}")]
    Validation { path: String, msg: String },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("group order exceeds the cap of {cap}")]
    OrderCap { cap: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("degree {degree} exceeds cutoff {cutoff}")]
    CutoffExceeded { degree: usize, cutoff: usize },

    #[error("missing Chow ring data for {0}")]
    MissingRing(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::validation("$", e.to_string())
    }
}
