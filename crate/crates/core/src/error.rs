use thiserror::Error;

/// Errors produced across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("observation ({response}) at stimulus {stimulus} has zero predictive probability")]
    ImpossibleObservation { stimulus: f64, response: f64 },

    #[error("unknown focus value: {0}")]
    Lookup(String),

    #[error("parameter focus is ambiguous for a belief over {0} models")]
    AmbiguousFocus(usize),

    #[error("focus kind {0} is not supported here")]
    UnsupportedFocus(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("config parse error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    #[error("replication {rep} failed: {source}")]
    Replication {
        rep: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("malformed trial log at line {line}: {message}")]
    TrialLog { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
