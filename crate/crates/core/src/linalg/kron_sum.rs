//! Operators on `Fock ⊗ local` spaces stored as sums of Kronecker products.
//!
//! Every operator in the oscillator problem is a short sum of terms
//! `F ⊗ L`, where `F` acts on the truncated Fock space and `L` on the
//! spinor ⊗ color space. Products and commutators stay in this form, and
//! norms over a subset of Fock indices are evaluated block by block, so the
//! full dense matrix is only formed when an eigensolve needs it.

use std::sync::Arc;

use super::matrix::{kron, ComplexMatrix, C64, ONE, ZERO};

#[derive(Clone, Debug)]
pub enum FockFactor {
    Identity(usize),
    Dense(Arc<ComplexMatrix>),
}

impl FockFactor {
    pub fn dense(m: ComplexMatrix) -> Self {
        FockFactor::Dense(Arc::new(m))
    }

    pub fn dim(&self) -> usize {
        match self {
            FockFactor::Identity(n) => *n,
            FockFactor::Dense(m) => m.rows(),
        }
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> C64 {
        match self {
            FockFactor::Identity(_) => {
                if i == j {
                    ONE
                } else {
                    ZERO
                }
            }
            FockFactor::Dense(m) => m[(i, j)],
        }
    }

    pub fn to_matrix(&self) -> ComplexMatrix {
        match self {
            FockFactor::Identity(n) => ComplexMatrix::identity(*n),
            FockFactor::Dense(m) => (**m).clone(),
        }
    }

    fn mul(&self, other: &FockFactor) -> FockFactor {
        match (self, other) {
            (FockFactor::Identity(n), FockFactor::Identity(_)) => FockFactor::Identity(*n),
            (FockFactor::Identity(_), b) => b.clone(),
            (a, FockFactor::Identity(_)) => a.clone(),
            (FockFactor::Dense(a), FockFactor::Dense(b)) => FockFactor::dense(&**a * &**b),
        }
    }

    fn adjoint(&self) -> FockFactor {
        match self {
            FockFactor::Identity(n) => FockFactor::Identity(*n),
            FockFactor::Dense(m) => FockFactor::dense(m.adjoint()),
        }
    }

    fn same_identity(&self, other: &FockFactor) -> bool {
        matches!((self, other), (FockFactor::Identity(_), FockFactor::Identity(_)))
    }
}

#[derive(Clone, Debug)]
pub struct KronTerm {
    pub fock: FockFactor,
    pub local: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub struct KronOperator {
    fock_dim: usize,
    local_dim: usize,
    terms: Vec<KronTerm>,
}

impl KronOperator {
    pub fn zero(fock_dim: usize, local_dim: usize) -> Self {
        Self {
            fock_dim,
            local_dim,
            terms: Vec::new(),
        }
    }

    pub fn term(fock: FockFactor, local: ComplexMatrix) -> Self {
        assert!(local.is_square(), "local factor must be square");
        let mut op = Self::zero(fock.dim(), local.rows());
        op.push(fock, local);
        op
    }

    /// `I_fock ⊗ local`.
    pub fn local(fock_dim: usize, local: ComplexMatrix) -> Self {
        Self::term(FockFactor::Identity(fock_dim), local)
    }

    /// `fock ⊗ I_local`.
    pub fn fock(fock: ComplexMatrix, local_dim: usize) -> Self {
        Self::term(FockFactor::dense(fock), ComplexMatrix::identity(local_dim))
    }

    pub fn push(&mut self, fock: FockFactor, local: ComplexMatrix) {
        assert_eq!(fock.dim(), self.fock_dim, "Fock dimension mismatch");
        assert_eq!(local.rows(), self.local_dim, "local dimension mismatch");
        self.terms.push(KronTerm { fock, local });
    }

    pub fn fock_dim(&self) -> usize {
        self.fock_dim
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn dim(&self) -> usize {
        self.fock_dim * self.local_dim
    }

    pub fn terms(&self) -> &[KronTerm] {
        &self.terms
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.local = t.local.scale(s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.simplify()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.fock_dim, self.local_dim);
        for a in &self.terms {
            for b in &other.terms {
                out.terms.push(KronTerm {
                    fock: a.fock.mul(&b.fock),
                    local: &a.local * &b.local,
                });
            }
        }
        out.simplify()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            fock_dim: self.fock_dim,
            local_dim: self.local_dim,
            terms: self
                .terms
                .iter()
                .map(|t| KronTerm {
                    fock: t.fock.adjoint(),
                    local: t.local.adjoint(),
                })
                .collect(),
        }
    }

    /// Merges terms with identical local factors and drops zero terms.
    /// First-occurrence order is kept so the result is deterministic.
    pub fn simplify(&self) -> Self {
        let mut merged: Vec<KronTerm> = Vec::new();
        for t in &self.terms {
            if t.local.is_zero() || fock_is_zero(&t.fock) {
                continue;
            }
            match merged.iter_mut().find(|m| m.local == t.local) {
                Some(slot) if slot.fock.same_identity(&t.fock) => {
                    slot.local = &slot.local * 2.0;
                }
                Some(slot) => {
                    slot.fock = FockFactor::dense(&slot.fock.to_matrix() + &t.fock.to_matrix());
                }
                None => merged.push(t.clone()),
            }
        }
        // Same Fock factor, different local factors: fold into one term.
        let mut folded: Vec<KronTerm> = Vec::new();
        for t in merged {
            let same = folded.iter_mut().find(|m| match (&m.fock, &t.fock) {
                (FockFactor::Identity(_), FockFactor::Identity(_)) => true,
                (FockFactor::Dense(a), FockFactor::Dense(b)) => Arc::ptr_eq(a, b),
                _ => false,
            });
            match same {
                Some(slot) => slot.local = &slot.local + &t.local,
                None => folded.push(t),
            }
        }
        folded.retain(|t| !t.local.is_zero() && !fock_is_zero(&t.fock));
        Self {
            fock_dim: self.fock_dim,
            local_dim: self.local_dim,
            terms: folded,
        }
    }

    /// Sum of the terms as one dense matrix, index `fock * local_dim + local`.
    pub fn to_dense(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim(), self.dim());
        for t in &self.terms {
            out += &kron(&t.fock.to_matrix(), &t.local);
        }
        out
    }

    /// Block `(i, j)` of the operator: `sum_t F_t[i, j] L_t`.
    pub fn block(&self, i: usize, j: usize) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.local_dim, self.local_dim);
        for t in &self.terms {
            let f = t.fock.entry(i, j);
            if f.re == 0.0 && f.im == 0.0 {
                continue;
            }
            out += &t.local.scale(f);
        }
        out
    }

    /// Max entry modulus of `P A P`, where `P` projects onto the listed Fock
    /// indices (all indices when `None`).
    pub fn max_abs_on(&self, fock_indices: Option<&[usize]>) -> f64 {
        let all: Vec<usize>;
        let idx = match fock_indices {
            Some(s) => s,
            None => {
                all = (0..self.fock_dim).collect();
                &all
            }
        };
        let mut worst = 0.0f64;
        for &i in idx {
            for &j in idx {
                worst = worst.max(self.block(i, j).max_abs());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_on(None)
    }

    /// `max_abs(A - A^dagger)` without forming the dense matrix.
    pub fn hermiticity_residual(&self) -> f64 {
        self.sub(&self.adjoint()).max_abs()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(
            (self.fock_dim, self.local_dim),
            (other.fock_dim, other.local_dim),
            "incompatible Kronecker operators"
        );
    }
}

fn fock_is_zero(f: &FockFactor) -> bool {
    match f {
        FockFactor::Identity(_) => false,
        FockFactor::Dense(m) => m.is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::pauli;

    fn sample_fock(n: usize, seed: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = C64::new(
                    ((i * 5 + j * 3 + seed) % 7) as f64 - 3.0,
                    ((i + j * 2 + seed) % 3) as f64 - 1.0,
                );
            }
        }
        m
    }

    fn sample_op(seed: usize) -> KronOperator {
        let n = 3;
        let mut op = KronOperator::local(n, pauli(seed % 3));
        op.push(FockFactor::dense(sample_fock(n, seed)), pauli((seed + 1) % 3));
        op.push(
            FockFactor::dense(sample_fock(n, seed + 4)),
            ComplexMatrix::identity(2),
        );
        op
    }

    #[test]
    fn structured_algebra_matches_dense() {
        let a = sample_op(1);
        let b = sample_op(2);
        let (da, db) = (a.to_dense(), b.to_dense());
        assert!(a.mul(&b).to_dense().approx_eq(&(&da * &db), 1e-12));
        assert!(a.add(&b).to_dense().approx_eq(&(&da + &db), 1e-12));
        let comm = &(&da * &db) - &(&db * &da);
        assert!(a.commutator(&b).to_dense().approx_eq(&comm, 1e-12));
        assert!(a.adjoint().to_dense().approx_eq(&da.adjoint(), 0.0));
    }

    #[test]
    fn block_norms_match_dense_projection() {
        let a = sample_op(3);
        let dense = a.to_dense();
        assert_eq!(a.max_abs(), dense.max_abs());
        let keep = [0usize, 2];
        let rows: Vec<usize> = keep.iter().flat_map(|&f| (0..2).map(move |l| f * 2 + l)).collect();
        let projected = dense.submatrix(&rows, &rows);
        assert!((a.max_abs_on(Some(&keep)) - projected.max_abs()).abs() < 1e-14);
        assert!((a.hermiticity_residual() - dense.hermiticity_residual()).abs() < 1e-12);
    }

    #[test]
    fn commutator_of_operator_with_itself_vanishes() {
        let a = sample_op(5);
        assert!(a.commutator(&a).max_abs() < 1e-12);
    }
}
