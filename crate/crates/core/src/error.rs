use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid term set '{set}': {reason}")]
    TermSet { set: String, reason: String },

    #[error("unknown word '{word}' for parameter '{parameter}'")]
    UnknownWord { parameter: String, word: String },

    #[error("missing value for parameter '{0}'")]
    MissingParameter(String),

    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),

    #[error("invalid FOU: {0}")]
    InvalidFou(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    #[error("validation error for '{word}': {constraint}")]
    Validation { word: String, constraint: String },

    #[error("codebook incomplete: no entry for '{word}' of parameter '{parameter}'")]
    Incomplete { parameter: String, word: String },

    #[error("no codebook entry for ('{parameter}', '{word}')")]
    Lookup { parameter: String, word: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
