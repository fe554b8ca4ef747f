use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An operation was called outside its precondition (duplicate task in a
    /// bundle, task already present, ...).
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A task or agent identifier outside the instance.
    #[error("unknown {kind} id {id}")]
    UnknownId { kind: &'static str, id: usize },

    /// Invalid parameters: sampling probability, agent counts, model parameters.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The exhaustive optimum refuses instances it cannot enumerate.
    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("communication graph: {0}")]
    Graph(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
