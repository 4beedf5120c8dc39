//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("structure constants are not antisymmetric (max violation {max_violation:e})")]
    NotAntisymmetric { max_violation: f64 },

    #[error("Jacobi identity fails (max residual {max_residual:e})")]
    JacobiViolation { max_residual: f64 },

    #[error("ambient complex dimension must be at least 2, got {0}")]
    AmbientTooSmall(usize),

    #[error("spanning set is empty or spans the zero subspace")]
    EmptySpan,

    #[error("subspace is not closed under the bracket (residual {residual:e})")]
    NotClosed { residual: f64 },

    #[error("vector is not normal to the subalgebra (tangential part {tangential:e})")]
    NotNormal { tangential: f64 },

    #[error("subspace is not contained in the g_alpha block (residual {residual:e})")]
    NotInAlphaBlock { residual: f64 },

    #[error("subalgebra has basis vectors outside the nilpotent part (residual {residual:e})")]
    NotInNilpotentPart { residual: f64 },

    #[error("operation requires dimension >= 2, got {0}")]
    BelowScope(usize),

    #[error("angle pi/2 is excluded for this constant")]
    RightAngleExcluded,

    #[error("invalid family parameter: {0}")]
    InvalidFamilyParameter(String),

    #[error("family instance is infeasible: {0}")]
    InfeasibleFamily(String),

    #[error("document error: {0}")]
    Document(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
