//! The non-Abelian Dirac oscillator on a truncated Fock basis.
//!
//! Layout is `Fock ⊗ spinor(4) ⊗ color(2)`; with `d = 2` the Fock index is
//! `n_1 · N + n_2`. Operators are kept as [`KronOperator`] sums so that
//! commutator and guard-band checks never need the dense matrix; the dense
//! form is built once, on demand, for the eigensolver.

use std::sync::OnceLock;

use crate::clifford::GammaSet;
use crate::error::{Error, Result};
use crate::gauge_algebra::ChargeSet;
use crate::linalg::{herm_eigen, kron, ComplexMatrix, KronOperator, C64};
use crate::nonabelian::color_shift_vector;

/// Largest allowed total dimension `N^d · 8`.
pub const DIMENSION_CAP: usize = 8192;
pub const SPINOR_COLOR_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct OscParams {
    pub dimension: usize,
    pub mass: f64,
    pub omega: f64,
    pub eta: f64,
    pub phi: [f64; 3],
    /// Sign of the constant color term in `π_i`; `-1` by default.
    pub extra_sign: f64,
    /// Fock states per axis.
    pub truncation: usize,
    pub guard_fraction: f64,
    pub tolerance: f64,
}

impl Default for OscParams {
    fn default() -> Self {
        Self {
            dimension: 1,
            mass: 1.0,
            omega: 1.0,
            eta: 0.0,
            phi: [0.0; 3],
            extra_sign: -1.0,
            truncation: 16,
            guard_fraction: 0.5,
            tolerance: 1e-10,
        }
    }
}

impl OscParams {
    pub fn fock_dim(&self) -> usize {
        self.truncation.pow(self.dimension as u32)
    }

    pub fn total_dim(&self) -> usize {
        self.fock_dim() * SPINOR_COLOR_DIM
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=2).contains(&self.dimension) {
            return Err(Error::UnsupportedDimension(self.dimension));
        }
        let positive = [("mass", self.mass), ("omega", self.omega), ("tolerance", self.tolerance)];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!("{name} must be > 0, got {v}")));
            }
        }
        if !self.eta.is_finite() || self.phi.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("eta and phi must be finite".into()));
        }
        if self.extra_sign != 1.0 && self.extra_sign != -1.0 {
            return Err(Error::InvalidInput(format!(
                "extra_sign must be +1 or -1, got {}",
                self.extra_sign
            )));
        }
        if self.truncation < 1 {
            return Err(Error::InvalidInput("truncation must be >= 1".into()));
        }
        if !(self.guard_fraction > 0.0 && self.guard_fraction <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "guard_fraction must lie in (0, 1], got {}",
                self.guard_fraction
            )));
        }
        check_cap(self.truncation, self.dimension)
    }
}

fn check_cap(n: usize, d: usize) -> Result<()> {
    let dim = n
        .checked_pow(d as u32)
        .and_then(|f| f.checked_mul(SPINOR_COLOR_DIM))
        .unwrap_or(usize::MAX);
    if dim > DIMENSION_CAP {
        return Err(Error::SizeCap {
            dim,
            cap: DIMENSION_CAP,
        });
    }
    Ok(())
}

/// Position and momentum matrices on the Fock space, one per axis.
#[derive(Debug, Clone)]
pub struct FockOperators {
    pub truncation: usize,
    pub dimension: usize,
    pub x: Vec<ComplexMatrix>,
    pub p: Vec<ComplexMatrix>,
}

impl FockOperators {
    pub fn fock_dim(&self) -> usize {
        self.truncation.pow(self.dimension as u32)
    }

    /// Fock indices whose every per-axis occupation is `< fraction · N`.
    pub fn guard_indices(&self, fraction: f64) -> Vec<usize> {
        let n = self.truncation;
        let limit = fraction * n as f64;
        (0..self.fock_dim())
            .filter(|&idx| {
                let mut rest = idx;
                (0..self.dimension).all(|_| {
                    let occ = rest % n;
                    rest /= n;
                    (occ as f64) < limit
                })
            })
            .collect()
    }

    /// Occupation numbers `(n_1, ..., n_d)` of a Fock index.
    pub fn occupations(&self, idx: usize) -> Vec<usize> {
        let n = self.truncation;
        let mut occ = vec![0; self.dimension];
        let mut rest = idx;
        for slot in occ.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        occ
    }
}

/// Annihilation operator on `n` states: `a[k-1, k] = √k`.
pub fn annihilation(n: usize) -> ComplexMatrix {
    let mut a = ComplexMatrix::zeros(n, n);
    for k in 1..n {
        a[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    a
}

/// `x = (a + a†)/√(2mω)` and `p = i√(mω/2)(a† - a)` per axis, embedded with
/// identities in the order axis 1 ⊗ axis 2.
pub fn fock_ops(n: usize, d: usize, m: f64, omega: f64) -> Result<FockOperators> {
    if !(1..=2).contains(&d) {
        return Err(Error::UnsupportedDimension(d));
    }
    if n < 1 {
        return Err(Error::InvalidInput("truncation must be >= 1".into()));
    }
    if !(m > 0.0 && omega > 0.0) {
        return Err(Error::InvalidInput(format!(
            "mass and omega must be > 0, got m = {m}, omega = {omega}"
        )));
    }
    check_cap(n, d)?;
    let a = annihilation(n);
    let ad = a.adjoint();
    let mw = m * omega;
    let x1 = (&a + &ad).scale_real(1.0 / (2.0 * mw).sqrt());
    let p1 = (&ad - &a).scale(C64::new(0.0, (mw / 2.0).sqrt()));
    let id = ComplexMatrix::identity(n);
    let (x, p) = match d {
        1 => (vec![x1], vec![p1]),
        _ => (
            vec![kron(&x1, &id), kron(&id, &x1)],
            vec![kron(&p1, &id), kron(&id, &p1)],
        ),
    };
    Ok(FockOperators {
        truncation: n,
        dimension: d,
        x,
        p,
    })
}

/// `β ⊗ I_color`.
pub fn beta_local(g: &GammaSet) -> ComplexMatrix {
    kron(&g.beta, &ComplexMatrix::identity(2))
}

/// `α_i ⊗ I_color`.
pub fn alpha_local(g: &GammaSet, i: usize) -> ComplexMatrix {
    kron(&g.alpha[i], &ComplexMatrix::identity(2))
}

/// Constant color term `extra_sign · i mωη β ⊗ c_i` of `π_i`.
pub fn color_term(g: &GammaSet, c: &ChargeSet, p: &OscParams, axis: usize) -> ComplexMatrix {
    let shift = &color_shift_vector(p.phi, c)[axis];
    kron(&g.beta, shift).scale(C64::new(0.0, p.extra_sign * p.mass * p.omega * p.eta))
}

/// `π_i = p_i ⊗ I - imω x_i ⊗ β + extra_sign · imωη I ⊗ β c_i`.
pub fn nonminimal_momentum(
    f: &FockOperators,
    g: &GammaSet,
    c: &ChargeSet,
    p: &OscParams,
) -> Vec<KronOperator> {
    let mw = p.mass * p.omega;
    let beta = beta_local(g);
    (0..f.dimension)
        .map(|i| {
            let mut pi = KronOperator::fock(f.p[i].clone(), SPINOR_COLOR_DIM);
            pi = pi.add(&KronOperator::term(
                crate::linalg::FockFactor::dense(f.x[i].clone()),
                beta.scale(C64::new(0.0, -mw)),
            ));
            pi.add(&KronOperator::local(f.fock_dim(), color_term(g, c, p, i)))
                .simplify()
        })
        .collect()
}

#[derive(Debug)]
pub struct HamiltonianMatrix {
    pub operator: KronOperator,
    pub params: OscParams,
    pub hermiticity_residual: f64,
    dense: OnceLock<ComplexMatrix>,
}

impl Clone for HamiltonianMatrix {
    fn clone(&self) -> Self {
        Self {
            operator: self.operator.clone(),
            params: self.params.clone(),
            hermiticity_residual: self.hermiticity_residual,
            dense: self.dense.clone(),
        }
    }
}

impl HamiltonianMatrix {
    /// Dense matrix, built on first use.
    pub fn matrix(&self) -> &ComplexMatrix {
        self.dense.get_or_init(|| self.operator.to_dense())
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }
}

/// `H = Σ_i (I ⊗ α_i ⊗ I) π_i + m (I ⊗ β ⊗ I)`.
pub fn build_hamiltonian(pi: &[KronOperator], g: &GammaSet, p: &OscParams) -> Result<HamiltonianMatrix> {
    p.validate()?;
    if pi.len() != p.dimension {
        return Err(Error::InvalidInput(format!(
            "expected {} momentum operators, got {}",
            p.dimension,
            pi.len()
        )));
    }
    let fock_dim = p.fock_dim();
    let mut h = KronOperator::local(fock_dim, beta_local(g).scale_real(p.mass));
    for (i, pi_i) in pi.iter().enumerate() {
        if pi_i.fock_dim() != fock_dim {
            return Err(Error::InvalidInput(format!(
                "momentum operator {} has Fock dimension {}, expected {fock_dim}",
                i + 1,
                pi_i.fock_dim()
            )));
        }
        h = h.add(&KronOperator::local(fock_dim, alpha_local(g, i)).mul(pi_i));
    }
    let h = h.simplify();
    let residual = h.hermiticity_residual();
    let tol = 1e-12 * h.max_abs().max(1.0);
    if !(residual <= tol) {
        return Err(Error::NotHermitian { residual, tol });
    }
    Ok(HamiltonianMatrix {
        operator: h,
        params: p.clone(),
        hermiticity_residual: residual,
        dense: OnceLock::new(),
    })
}

/// Fock operators, `π_i` and `H` in one call.
pub fn assemble(g: &GammaSet, c: &ChargeSet, p: &OscParams) -> Result<(FockOperators, HamiltonianMatrix)> {
    p.validate()?;
    let f = fock_ops(p.truncation, p.dimension, p.mass, p.omega)?;
    let pi = nonminimal_momentum(&f, g, c, p);
    let h = build_hamiltonian(&pi, g, p)?;
    Ok((f, h))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Per-eigenvalue convergence flags; empty unless a convergence check ran.
    pub converged: Vec<bool>,
    pub converged_count: usize,
    pub hermiticity_residual: f64,
    /// Largest `||H v - λ v||` reported by the eigensolver.
    pub eigen_residual: f64,
    pub params: OscParams,
}

impl SpectrumResult {
    /// Distinct positive levels among the converged eigenvalues (all
    /// eigenvalues when no convergence check ran), ascending. Values within
    /// `tol · max(1, |λ|)` of the previous level are merged.
    pub fn positive_levels(&self, tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for (k, &v) in self.eigenvalues.iter().enumerate() {
            let ok = self.converged.is_empty() || self.converged[k];
            if !ok || v <= 0.0 {
                continue;
            }
            match out.last() {
                Some(&last) if (v - last).abs() <= tol * last.abs().max(1.0) => {}
                _ => out.push(v),
            }
        }
        out
    }
}

/// All eigenvalues of `H`. With `check_convergence`, the problem is solved
/// again at truncation `2N` and eigenvalues are compared position by
/// position within each sign sector: positives counted upward from the
/// smallest positive one, negatives downward from the largest negative one.
pub fn spectrum(h: &HamiltonianMatrix, g: &GammaSet, c: &ChargeSet, check_convergence: bool) -> Result<SpectrumResult> {
    let p = &h.params;
    let eig = herm_eigen(h.matrix(), p.tolerance)?;
    let mut out = SpectrumResult {
        eigenvalues: eig.eigenvalues,
        converged: Vec::new(),
        converged_count: 0,
        hermiticity_residual: h.hermiticity_residual,
        eigen_residual: eig.residual,
        params: p.clone(),
    };
    if check_convergence {
        let doubled = OscParams {
            truncation: 2 * p.truncation,
            ..p.clone()
        };
        let (_, h2) = assemble(g, c, &doubled)?;
        let reference = herm_eigen(h2.matrix(), p.tolerance)?.eigenvalues;
        out.converged = convergence_flags(&out.eigenvalues, &reference, 1e-8);
        out.converged_count = out.converged.iter().filter(|&&b| b).count();
    }
    Ok(out)
}

/// Sign-partitioned positional matching of two ascending spectra.
pub fn convergence_flags(values: &[f64], reference: &[f64], tol: f64) -> Vec<bool> {
    let split = |v: &[f64]| v.partition_point(|&x| x < 0.0);
    let (s, r) = (split(values), split(reference));
    let close = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(1.0);
    let mut flags = vec![false; values.len()];
    // positives: k-th from the bottom of each positive sector
    for (k, &v) in values[s..].iter().enumerate() {
        if let Some(&w) = reference.get(r + k) {
            flags[s + k] = close(v, w);
        }
    }
    // negatives: k-th from the top of each negative sector
    for k in 0..s {
        if k < r {
            flags[s - 1 - k] = close(values[s - 1 - k], reference[r - 1 - k]);
        }
    }
    flags
}

fn nonzero(name: &str, v: f64) -> Result<f64> {
    if v == 0.0 || !v.is_finite() {
        return Err(Error::InvalidInput(format!("{name} must be finite and nonzero, got {v}")));
    }
    Ok(v)
}

/// `λ = 2m²ω / κe`.
pub fn lambda_from_moment(m: f64, omega: f64, kappa: f64, e_charge: f64) -> Result<f64> {
    let den = nonzero("kappa * e_charge", kappa * e_charge)?;
    Ok(2.0 * m * m * omega / den)
}

/// `λ = 2mω / eB`.
pub fn lambda_from_field(m: f64, omega: f64, e_charge: f64, b: f64) -> Result<f64> {
    let den = nonzero("e_charge * B", e_charge * b)?;
    Ok(2.0 * m * omega / den)
}

/// `B = mω / q`.
pub fn field_from_orbit(m: f64, omega: f64, q_charge: f64) -> Result<f64> {
    Ok(m * omega / nonzero("q_charge", q_charge)?)
}
