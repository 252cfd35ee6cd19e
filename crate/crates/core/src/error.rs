use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("symbol `{0}` is not assigned")]
    Unassigned(&'static str),

    #[error("unsupported series: {0}")]
    Unsupported(String),

    #[error("cannot bound tail: {0}")]
    CannotBound(String),

    #[error("not collapsible: {0}")]
    NotCollapsible(String),

    #[error("convergence too slow: {0}")]
    TooSlow(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("duplicate catalog id `{0}`")]
    DuplicateId(String),

    #[error("entry `{id}`: declared rate {declared} but series has rate {computed}")]
    RateMismatch {
        id: String,
        declared: String,
        computed: String,
    },

    #[error("io error on {path}: {msg}")]
    Io { path: PathBuf, msg: String },
}

impl Error {
    pub(crate) fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
