use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures that prevent an operation from producing a verdict.
///
/// Law violations are never reported through this type; they are part of the
/// reports returned by the checking operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Unknown ids, ill-typed compositions, mismatched bases and similar.
    #[error("structural error: {0}")]
    Structural(String),

    /// A configured cap would be exceeded.
    #[error("resource cap exceeded: {what} needs {needed} but the cap is {cap}")]
    Resource { what: String, needed: String, cap: usize },

    /// Input outside the domain of a builder (e.g. the divisor poset of 0).
    #[error("domain error: {0}")]
    Domain(String),

    /// A mediating arrow is missing or not unique.
    #[error("universal property fails: {0}")]
    UniversalProperty(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn resource(what: impl Into<String>, needed: impl ToString, cap: usize) -> Self {
        Error::Resource {
            what: what.into(),
            needed: needed.to_string(),
            cap,
        }
    }
}
