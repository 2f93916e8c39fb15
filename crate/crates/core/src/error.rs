use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("input contains no token lines")]
    EmptyInput,

    #[error("treebank `{0}` has no tokens")]
    EmptyTreebank(String),

    #[error("frequency table is empty")]
    EmptyTable,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("repetition {index}: {source}")]
    Repetition {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("compression failed: {0}")]
    Compression(String),

    #[error("column `{0}` has zero variance")]
    ZeroVariance(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("not enough data for {analysis}: need {needed}, have {available}")]
    InsufficientData {
        analysis: String,
        needed: usize,
        available: usize,
    },

    #[error("WALS header is missing configured features: {}", .0.join(", "))]
    WalsHeader(Vec<String>),

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn file(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::File {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
