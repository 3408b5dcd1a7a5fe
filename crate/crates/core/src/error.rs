use thiserror::Error;

/// Errors of the group and Bethe Ansatz machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("rank {rank} exceeds the configured maximum {max}")]
    Capacity { rank: usize, max: usize },

    #[error("index {index} out of range for {what} (rank {rank})")]
    Index {
        what: &'static str,
        index: usize,
        rank: usize,
    },

    #[error("invalid signed permutation: {0}")]
    InvalidElement(String),

    #[error("point {0:?} lies on a wedge boundary")]
    BoundaryPoint(Vec<f64>),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error(
        "inconsistent coefficients at element #{element}: word [{assigned}] and word [{revisit}] \
         disagree by {residual:.3e}"
    )]
    Inconsistent {
        element: usize,
        assigned: String,
        revisit: String,
        residual: f64,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
