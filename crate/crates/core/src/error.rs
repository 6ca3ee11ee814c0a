use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("member identifiers collide after merging nested modules: {}", .0.join(", "))]
    Collision(Vec<String>),

    #[error("decompositions cover different module sets ({left} vs {right} modules, {shared} shared)")]
    UniverseMismatch {
        left: usize,
        right: usize,
        shared: usize,
    },

    #[error("graph has no edge weight (W = 0)")]
    ZeroWeight,

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("{what} is limited to {limit} elements, got {actual}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("{0}")]
    Domain(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }
}
