use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A construct is outside the logic it is used with.
    #[error("logic violation: {0}")]
    Logic(String),
    #[error("individual `{0}` is not named in the interpretation")]
    UnknownIndividual(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a tree-shaped query: {0}")]
    NotATree(String),
    #[error("size cap exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}
