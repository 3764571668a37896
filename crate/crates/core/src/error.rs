use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("malformed manifest: {0}")]
    Manifest(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("{path}: frequency column not strictly increasing at row {row}")]
    NonMonotonic { path: String, row: usize },

    #[error("unit mismatch on channel {channel}: {message}")]
    UnitMismatch { channel: String, message: String },

    #[error("missing diagonal channel {0}")]
    MissingDiagonal(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid trace: {0}")]
    InvalidTrace(String),

    #[error("non-uniform sampling at row {row}: step {step} s vs nominal {nominal} s")]
    NonUniformSampling { row: usize, step: f64, nominal: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(String),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("negative input: {0}")]
    Negative(String),

    #[error("{what} frequency {freq_hz} Hz exceeds Nyquist {nyquist_hz} Hz")]
    AboveNyquist { what: String, freq_hz: f64, nyquist_hz: f64 },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::Manifest(_) => "malformed_manifest",
            Error::Parse { .. } => "parse",
            Error::NonMonotonic { .. } => "non_monotonic_frequency",
            Error::UnitMismatch { .. } => "unit_mismatch",
            Error::MissingDiagonal(_) => "missing_diagonal_channel",
            Error::InvalidCurve(_) => "invalid_curve",
            Error::InvalidTrace(_) => "invalid_trace",
            Error::NonUniformSampling { .. } => "non_uniform_sampling",
            Error::NonFinite(_) => "non_finite",
            Error::Empty(_) => "empty",
            Error::Negative(_) => "negative_input",
            Error::AboveNyquist { .. } => "above_nyquist",
            Error::Numeric(_) => "numeric_failure",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }

    /// Process exit code: 2 config, 3 data, 4 numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Manifest(_) | Error::AboveNyquist { .. } => 2,
            Error::Numeric(_) | Error::Negative(_) => 4,
            _ => 3,
        }
    }
}
