//! Algebra, gauge-field and spectral toolkit for the non-Abelian Dirac
//! oscillator.
//!
//! Conventions used throughout: natural units, metric `diag(+1, -1, -1, -1)`,
//! the Dirac representation of the gamma matrices, a two-dimensional color
//! space, and the tensor order `Fock ⊗ spinor(4) ⊗ color(2)`.

pub mod clifford;
pub mod error;
pub mod gauge_algebra;
pub mod gauge_poly;
pub mod hamiltonian;
pub mod linalg;
pub mod nonabelian;
pub mod report;
pub mod symmetry;

pub use clifford::{build_dirac_set, sigma_tensor, verify_clifford, GammaSet, SigmaTensor};
pub use error::{Error, Result};
pub use gauge_algebra::{build_charges, verify_lie, ChargeSet};
pub use linalg::{herm_eigen, kron, ComplexMatrix, EigenResult, C64};
pub use hamiltonian::{build_hamiltonian, fock_ops, spectrum, FockOperators, HamiltonianMatrix, OscParams, SpectrumResult};
pub use nonabelian::{GaugeParams, NbFieldTensor, OperatorPoly};
pub use report::{Bound, CheckReport, ReportRow, RowKind};
pub use symmetry::{build_angular, commutator_report, spin_identity_check, AngularOps};
