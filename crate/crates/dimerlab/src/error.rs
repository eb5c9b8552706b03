use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The variants are grouped by the kind of caller mistake they signal: bad
/// textual input (`Parse`), parameters outside a family's domain
/// (`Parameter`), structurally unsuitable graphs or matrices (`Domain`), and
/// soft resource limits (`Limit`).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("{0}")]
    Domain(String),
    #[error("embedding error: edges {0} and {1} cross")]
    Embedding(usize, usize),
    #[error("size limit exceeded: {0}")]
    Limit(String),
}

impl Error {
    /// True for errors caused by malformed input text (as opposed to
    /// well-formed requests that cannot be computed).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
