use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Inputs disagree on system size, tensor order, or are otherwise malformed.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The requested computation is larger than the supported desk-scale bound.
    #[error("size cap exceeded: {what} needs {required}, bound is {bound}")]
    Capacity {
        what: String,
        required: String,
        bound: String,
    },

    /// A value that must satisfy an invariant (valid tableau, unit-sum weights) does not.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, required: impl ToString, bound: impl ToString) -> Self {
        Error::Capacity {
            what: what.into(),
            required: required.to_string(),
            bound: bound.to_string(),
        }
    }
}
