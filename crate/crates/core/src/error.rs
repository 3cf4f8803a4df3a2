use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoxeterError {
    #[error("syntax error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown catalog name '{0}'")]
    UnknownCatalog(String),
    #[error("invalid label {label} on edge {u}-{v} (labels must be >= 2 or inf)")]
    InvalidLabel { u: String, v: String, label: String },
    #[error("conflicting labels for edge {u}-{v}")]
    ConflictingEdge { u: String, v: String },
    #[error("duplicate vertex '{0}'")]
    DuplicateVertex(String),
    #[error("unknown vertex '{0}'")]
    UnknownVertex(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph must be connected")]
    NotConnected,
    #[error("graph must be of spherical type")]
    NotSpherical,
    #[error("vector of dimension {found} used with a system of rank {expected}")]
    ContextMismatch { expected: usize, found: usize },
    #[error("vector has coordinates of both signs; not a root")]
    MixedSignRoot,
    #[error("vector is not a unit root: <b,b> = {0}")]
    NotUnitRoot(String),
    #[error("ordering is not a permutation of the vertex set")]
    InvalidOrdering,
    #[error("vectors do not form a basis")]
    NotABasis,
    #[error("canonical form is degenerate")]
    DegenerateForm,
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CoxeterError {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        CoxeterError::Parse {
            position,
            message: message.into(),
        }
    }

    /// Process exit code for command-line front ends.
    pub fn exit_code(&self) -> i32 {
        match self {
            CoxeterError::Parse { .. }
            | CoxeterError::UnknownCatalog(_)
            | CoxeterError::InvalidLabel { .. }
            | CoxeterError::ConflictingEdge { .. }
            | CoxeterError::DuplicateVertex(_)
            | CoxeterError::UnknownVertex(_)
            | CoxeterError::EmptyGraph => 1,
            CoxeterError::CapExceeded(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CoxeterError> = std::result::Result<T, E>;
