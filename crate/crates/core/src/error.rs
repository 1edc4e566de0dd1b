use thiserror::Error;

use crate::exactlin::MatError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error("malformed {what}: {detail}")]
    Malformed { what: String, detail: String },
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("naturality fails at {0}")]
    NotNatural(String),
    #[error("{module} validation failed: {locus}")]
    Validation { module: &'static str, locus: String },
    #[error("density witness rejected: {0}")]
    Witness(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn malformed(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Malformed {
            what: what.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
