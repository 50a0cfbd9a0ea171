use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error)]
pub enum ZrError {
    #[error("pole of zeta at s = 1")]
    Pole,

    #[error("precision target {target:e} unreachable within the term budget (estimated error {estimate:e})")]
    PrecisionUnreachable { target: f64, estimate: f64 },

    #[error("argument out of range: {0}")]
    Range(String),

    #[error("capacity exceeded: {what} needs {requested}, cap is {cap}")]
    Capacity {
        what: &'static str,
        requested: f64,
        cap: f64,
    },

    #[error("beta = {beta} is not allowed here (homogeneous progressions only)")]
    Beta { beta: f64 },

    #[error("operation not defined for resonator kind {0}")]
    Kind(&'static str),

    #[error("shape violation: {0}")]
    Shape(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("config{}: {msg}", if *line > 0 { format!(" line {line}") } else { String::new() })]
    Config { line: usize, msg: String },

    #[error("zeta sample at ell = {ell} failed: {source}")]
    Sample {
        ell: u64,
        #[source]
        source: Box<ZrError>,
    },

    #[error("i/o error on {path:?}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl ZrError {
    pub(crate) fn range(msg: impl Into<String>) -> Self {
        ZrError::Range(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        ZrError::Validation(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            ZrError::Capacity { .. } => 3,
            ZrError::Sample { source, .. } => source.exit_code(),
            ZrError::Io { .. } | ZrError::Json(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, ZrError>;
