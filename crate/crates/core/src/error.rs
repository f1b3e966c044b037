use thiserror::Error;

/// Errors raised by the numerical and symbolic routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not Hermitian: max |h - h^dagger| = {residual:e} exceeds {tol:e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("eigensolver failed to converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigensolver residual {residual:e} exceeds tolerance {tol:e}")]
    Inaccurate { residual: f64, tol: f64 },

    #[error("matrix dimension {dim} exceeds the cap of {cap}")]
    SizeCap { dim: usize, cap: usize },

    #[error("unsupported spatial dimension {0}")]
    UnsupportedDimension(usize),

    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
