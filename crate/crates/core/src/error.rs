use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library.
///
/// Failed *verifications* (a nonzero jacobiator, an unexpected signature) are
/// not errors: they are reported through the report types with a FAIL status.
/// This enum covers malformed input and broken certificates.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("unsupported {what}: {value}")]
    Unsupported { what: &'static str, value: String },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("operators {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("joint eigenspaces span {found} of {ambient} dimensions; candidate eigenvalue set is incomplete")]
    FailureToSpan { found: usize, ambient: usize },

    #[error("certificate failed: {0}")]
    Certificate(String),

    #[error("not a true character: {0}")]
    NotACharacter(String),

    #[error("point is not on the unit sphere")]
    NotOnSphere,

    #[error("vector is not tangent to the sphere at the base point")]
    NotTangent,

    #[error("unrecognized Cartan matrix")]
    Unrecognized,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
