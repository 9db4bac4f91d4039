use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("requested {requested} digits exceeds the configured maximum of {max}")]
    Config { requested: u32, max: u32 },

    #[error("continued fraction breaks down: denominator q_{index} is zero")]
    Breakdown { index: usize },

    #[error("no convergence within {terms} terms (last delta {last_delta}{})",
        .bracket.as_ref().map(|(lo, hi)| format!(", bracket [{lo}, {hi}]")).unwrap_or_default())]
    NoConvergence {
        terms: usize,
        last_delta: String,
        bracket: Option<(String, String)>,
    },

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
