use thiserror::Error;

use crate::geometry::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed identifiers or references: duplicate ids, dangling endpoints,
    /// self-loops, rotation/incidence mismatches, fresh-id collisions.
    #[error("structural error: {message} (id `{id}`)")]
    Structural { id: String, message: String },

    /// The input is well formed but outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("directed cycle through edges {0:?}")]
    Cycle(Vec<String>),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("precondition failed: drawing is not a valid upward planar drawing ({} violation(s))", .0.violations.len())]
    InvalidDrawing(Box<ValidationReport>),

    /// A consistency check between two independent code paths failed.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn structural(id: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Structural {
            id: id.into(),
            message: message.into(),
        }
    }
}
