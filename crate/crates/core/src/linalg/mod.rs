//! Dense complex linear algebra: matrices, Kronecker products, brackets and
//! Hermitian eigensolvers.

mod eigen;
mod kron_sum;
mod matrix;

pub use eigen::{
    herm_eigen, herm_eigen_jacobi, herm_eigen_with, EigenMethod, EigenResult,
    JACOBI_MAX_SWEEPS, JACOBI_OFF_DIAGONAL_RATIO,
};
pub use kron_sum::{FockFactor, KronOperator, KronTerm};
pub use matrix::{
    anticommutator, bracket, commutator, kron, max_abs, pauli, BracketKind, ComplexMatrix, C64,
    I, ONE, ZERO,
};
