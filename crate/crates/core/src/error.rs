use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualityError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    /// A state invariant failed. `invariant` names the rule, `index` the offending entry if any.
    #[error("invariant violated: {invariant}{}", index.map(|i| format!(" (index {i})")).unwrap_or_default())]
    Invariant {
        invariant: String,
        index: Option<usize>,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    #[error("undefined visibility: all intensities are zero")]
    UndefinedVisibility,

    #[error("unknown scenario family `{0}`")]
    UnknownFamily(String),
}

impl DualityError {
    pub(crate) fn invariant(invariant: impl Into<String>, index: Option<usize>) -> Self {
        DualityError::Invariant {
            invariant: invariant.into(),
            index,
        }
    }
}

pub type Result<T, E = DualityError> = std::result::Result<T, E>;
