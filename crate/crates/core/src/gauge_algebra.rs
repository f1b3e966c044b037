//! U(2) = U(1) × SU(2) generators, charges and structure constants.
//!
//! Generators are `T^a = σ^a / 2`; charges are `Q^a = κ_Q σ^a` with a
//! configurable normalization. With `κ_Q = 1` the charges close as
//! `[Q^a, Q^b] = 2i f^{abc} Q^c`; in general the measured constant is
//! `c_Q = 2κ_Q`.

use crate::error::{Error, Result};
use crate::linalg::{commutator, pauli, ComplexMatrix, C64};
use crate::report::CheckReport;

/// Structure constants of su(2): `f^{abc} = ε^{abc}`, indices 0..3.
pub type StructureConstants = [[[i8; 3]; 3]; 3];

pub fn levi_civita() -> StructureConstants {
    let mut f = [[[0i8; 3]; 3]; 3];
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        f[a][b][c] = 1;
        f[a][c][b] = -1;
    }
    f
}

/// Mixed planar symbol `ε_{ia} = ε_{ia3}`: `ε_12 = +1`, `ε_21 = -1`, all
/// others zero. Indices are 0-based, `i, a ∈ 0..3`.
pub fn planar_epsilon(i: usize, a: usize) -> i8 {
    match (i, a) {
        (0, 1) => 1,
        (1, 0) => -1,
        _ => 0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChargeSet {
    pub t0: ComplexMatrix,
    pub t: [ComplexMatrix; 3],
    pub q0: ComplexMatrix,
    pub q: [ComplexMatrix; 3],
    pub kappa_q: f64,
    pub f: StructureConstants,
}

impl Default for ChargeSet {
    fn default() -> Self {
        build_charges(1.0).expect("unit normalization is valid")
    }
}

impl ChargeSet {
    /// `Σ_c coeffs[c] Q^c`.
    pub fn combine(&self, coeffs: [f64; 3]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2, 2);
        for (c, &w) in coeffs.iter().enumerate() {
            if w != 0.0 {
                out += &self.q[c].scale_real(w);
            }
        }
        out
    }
}

pub fn build_charges(kappa_q: f64) -> Result<ChargeSet> {
    if kappa_q == 0.0 || !kappa_q.is_finite() {
        return Err(Error::InvalidInput(format!(
            "charge normalization must be finite and nonzero, got {kappa_q}"
        )));
    }
    Ok(ChargeSet {
        t0: ComplexMatrix::identity(2),
        t: std::array::from_fn(|a| pauli(a).scale_real(0.5)),
        q0: ComplexMatrix::identity(2),
        q: std::array::from_fn(|a| pauli(a).scale_real(kappa_q)),
        kappa_q,
        f: levi_civita(),
    })
}

fn structure_sum(f: &StructureConstants, a: usize, b: usize, basis: &[ComplexMatrix; 3]) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(2, 2);
    for (c, m) in basis.iter().enumerate() {
        let w = f[a][b][c];
        if w != 0 {
            out += &m.scale_real(w as f64);
        }
    }
    out
}

/// Least-squares estimate of `c` in `[Q^a, Q^b] = c · i f^{abc} Q^c` over all
/// pairs with a nonzero right-hand side.
pub fn measure_charge_constant(c: &ChargeSet) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            let lhs = commutator(&c.q[a], &c.q[b]);
            let rhs = structure_sum(&c.f, a, b, &c.q).scale(C64::new(0.0, 1.0));
            for (x, y) in lhs.data().iter().zip(rhs.data()) {
                num += (y.conj() * x).re;
                den += y.norm_sqr();
            }
        }
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Residuals of `[T^a, T^b] - i f^{abc} T^c` for all nine ordered pairs, the
/// measured charge constant, and (for `κ_Q = 1`) the check `c_Q = 2`.
pub fn verify_lie(c: &ChargeSet) -> CheckReport {
    let mut report = CheckReport::new("su(2) commutation relations");
    let i = C64::new(0.0, 1.0);
    for a in 0..3 {
        for b in 0..3 {
            let lhs = commutator(&c.t[a], &c.t[b]);
            let rhs = structure_sum(&c.f, a, b, &c.t).scale(i);
            report.check_at_most(
                format!("[T^{},T^{}] - i f T", a + 1, b + 1),
                (&lhs - &rhs).max_abs(),
                1e-15,
            );
        }
    }
    let c_q = measure_charge_constant(c);
    let mut fit = 0.0f64;
    for a in 0..3 {
        for b in 0..3 {
            let lhs = commutator(&c.q[a], &c.q[b]);
            let rhs = structure_sum(&c.f, a, b, &c.q).scale(i * c_q);
            fit = fit.max((&lhs - &rhs).max_abs());
        }
    }
    report.check_at_most("[Q^a,Q^b] - c_Q i f Q (fit residual)", fit, 1e-15);
    if c.kappa_q == 1.0 {
        report.check_at_most("c_Q - 2", (c_q - 2.0).abs(), 1e-15);
    } else {
        report.finding(
            "c_Q",
            c_q,
            format!("measured charge constant at κ_Q = {}; equals 2κ_Q", c.kappa_q),
        );
    }
    if c.kappa_q != 0.25 {
        let literal = build_charges(0.25).expect("valid normalization");
        report.finding(
            "c_Q with Q^a = T^a/2",
            measure_charge_constant(&literal),
            "the literal normalization Q^a = T^a/2 closes with 1/2, not 2",
        );
    }
    report
}

/// `[X, [Y, Z]] + [Y, [Z, X]] + [Z, [X, Y]]`, max over all index triples.
pub fn jacobi_residual(basis: &[ComplexMatrix; 3]) -> f64 {
    let mut worst = 0.0f64;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let (x, y, z) = (&basis[a], &basis[b], &basis[c]);
                let sum = &(&commutator(x, &commutator(y, z)) + &commutator(y, &commutator(z, x)))
                    + &commutator(z, &commutator(x, y));
                worst = worst.max(sum.max_abs());
            }
        }
    }
    worst
}
