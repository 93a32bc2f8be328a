use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Unsupported root datum, bad prime, or malformed input.
    #[error("configuration error: {0}")]
    Config(String),
    /// An operation was called outside of its domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("search exhausted: {0}")]
    SearchFailure(String),
    #[error("search radius exhausted before the comparison was decided: {0}")]
    Indeterminate(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// A windowed computation disagreed with its enlarged-window rerun.
    #[error("not stabilized: {0}")]
    Stabilization(String),
    /// An internal invariant of a recursion failed; usually a convention mismatch.
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
