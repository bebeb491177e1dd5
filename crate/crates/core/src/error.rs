use thiserror::Error;

use crate::groups::GroupError;
use crate::linalg::LinalgError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("not a subgroup of the direct product: {0}")]
    NotASubgroup(String),
    #[error("source/target mismatch: {0}")]
    SourceTargetMismatch(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("could not split representation: {0}")]
    SplitFailure(String),
    #[error("multiplicity system inconsistent; the simple catalog is incomplete")]
    InconsistentSystem,
    #[error("simple catalog incomplete: {0}")]
    CatalogIncomplete(String),
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
