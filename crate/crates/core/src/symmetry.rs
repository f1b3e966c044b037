//! Angular momentum about the z axis and the conservation checks for the
//! planar oscillator.
//!
//! With `H = α_1 π_1 + α_2 π_2 + mβ` the canonical commutators give
//! `[L_z, H] = i(α×p)_z - mω(x×α)_z β` and the negative of the same for
//! `[Σ_3/2, H]`, so `J_z = L_z + Σ_3/2` commutes with the Abelian part.

use crate::clifford::GammaSet;
use crate::error::{Error, Result};
use crate::gauge_algebra::ChargeSet;
use crate::hamiltonian::{
    alpha_local, beta_local, build_hamiltonian, nonminimal_momentum, FockOperators, HamiltonianMatrix,
    OscParams, SPINOR_COLOR_DIM,
};
use crate::linalg::{herm_eigen, kron, ComplexMatrix, FockFactor, KronOperator, C64, I};
use crate::report::{Bound, CheckReport};

#[derive(Debug, Clone)]
pub struct AngularOps {
    /// `x p_y - y p_x` on the Fock space alone.
    pub lz_fock: ComplexMatrix,
    pub lz: KronOperator,
    /// `(I ⊗ Σ_3 ⊗ I) / 2`.
    pub sz_half: KronOperator,
    pub jz: KronOperator,
}

pub fn build_angular(f: &FockOperators, g: &GammaSet) -> Result<AngularOps> {
    if f.dimension != 2 {
        return Err(Error::UnsupportedDimension(f.dimension));
    }
    let lz_fock = &(&f.x[0] * &f.p[1]) - &(&f.x[1] * &f.p[0]);
    let lz = KronOperator::fock(lz_fock.clone(), SPINOR_COLOR_DIM);
    let s3 = kron(&g.sigma_big[2], &ComplexMatrix::identity(2)).scale_real(0.5);
    let sz_half = KronOperator::local(f.fock_dim(), s3);
    let jz = lz.add(&sz_half);
    Ok(AngularOps {
        lz_fock,
        lz,
        sz_half,
        jz,
    })
}

/// Eigenvalues of `L_z` restricted to the complete shells `n_1 + n_2 ≤ s`.
/// `L_z` conserves the total quantum number, so on complete shells the
/// truncation is exact and the eigenvalues are integers.
pub fn lz_shell_eigenvalues(a: &AngularOps, f: &FockOperators, max_shell: usize) -> Result<Vec<f64>> {
    if max_shell >= f.truncation {
        return Err(Error::InvalidInput(format!(
            "shell {max_shell} is incomplete at truncation {}",
            f.truncation
        )));
    }
    let idx: Vec<usize> = (0..f.fock_dim())
        .filter(|&i| f.occupations(i).iter().sum::<usize>() <= max_shell)
        .collect();
    let sub = a.lz_fock.submatrix(&idx, &idx);
    Ok(herm_eigen(&sub, 1e-12)?.eigenvalues)
}

/// `(α×p)_z = α_1 p_2 - α_2 p_1`.
fn alpha_cross_p(f: &FockOperators, g: &GammaSet) -> KronOperator {
    KronOperator::term(FockFactor::dense(f.p[1].clone()), alpha_local(g, 0))
        .sub(&KronOperator::term(FockFactor::dense(f.p[0].clone()), alpha_local(g, 1)))
}

/// `(x×α)_z β = x_1 α_2 β - x_2 α_1 β`.
fn x_cross_alpha_beta(f: &FockOperators, g: &GammaSet) -> KronOperator {
    let beta = beta_local(g);
    KronOperator::term(FockFactor::dense(f.x[0].clone()), &alpha_local(g, 1) * &beta)
        .sub(&KronOperator::term(FockFactor::dense(f.x[1].clone()), &alpha_local(g, 0) * &beta))
}

/// Guard-banded residuals of the commutator identities. Rows (1)–(3) use the
/// Abelian Hamiltonian (same parameters with `η = 0`); the commutator of
/// `J_z` with the full `h` is a finding.
pub fn commutator_report(
    a: &AngularOps,
    h: &HamiltonianMatrix,
    f: &FockOperators,
    g: &GammaSet,
    p: &OscParams,
) -> Result<CheckReport> {
    if f.dimension != 2 || p.dimension != 2 {
        return Err(Error::UnsupportedDimension(p.dimension));
    }
    let guard = f.guard_indices(p.guard_fraction);
    let norm = |op: &KronOperator| op.max_abs_on(Some(&guard));
    let abelian_params = OscParams { eta: 0.0, ..p.clone() };
    let pi = nonminimal_momentum(f, g, &ChargeSet::default(), &abelian_params);
    let h_ab = build_hamiltonian(&pi, g, &abelian_params)?.operator;

    let l_comm = a.lz.commutator(&h_ab);
    let s_comm = a.sz_half.commutator(&h_ab);
    let j_comm = a.jz.commutator(&h_ab);
    let mw = p.mass * p.omega;
    let axp = alpha_cross_p(f, g).scale(I);
    let xab = x_cross_alpha_beta(f, g);
    let l_closed = axp.sub(&xab.scale(C64::new(mw, 0.0)));
    let l_literal = axp.sub(&xab.scale(C64::new(p.mass, 0.0)));

    let mut r = CheckReport::new("angular momentum commutators");
    let herm = [&a.lz, &a.sz_half, &a.jz]
        .iter()
        .map(|op| op.hermiticity_residual())
        .fold(0.0, f64::max);
    r.check_at_most("L_z, Σ_3/2, J_z Hermitian", herm, 1e-12);
    r.check_at_most(
        "[L_z,H] - (i(α×p)_z - mω(x×α)_z β)",
        norm(&l_comm.sub(&l_closed)),
        1e-8,
    );
    r.check_at_most(
        "[Σ_3/2,H] - (-i(α×p)_z + mω(x×α)_z β)",
        norm(&s_comm.add(&l_closed)),
        1e-8,
    );
    r.check_at_most("[J_z,H] (Abelian)", norm(&j_comm), 1e-8);
    r.check_at_most(
        "[L_z,H] + [Σ_3/2,H] - [J_z,H]",
        norm(&l_comm.add(&s_comm).sub(&j_comm)),
        1e-12,
    );
    r.check("|[L_z,H]| (not conserved alone)", norm(&l_comm), Bound::Above(0.1));
    r.check("|[Σ_3/2,H]| (not conserved alone)", norm(&s_comm), Bound::Above(0.1));
    r.finding(
        "[L_z,H] - (i(α×p)_z - m(x×α)_z β)",
        norm(&l_comm.sub(&l_literal)),
        "reference form without ω; vanishes only at ω = 1",
    );
    r.finding(
        "[Σ_3/2,H] - (-i(α×p)_z + m(x×α)_z β)",
        norm(&s_comm.add(&l_literal)),
        "reference form without ω; vanishes only at ω = 1",
    );
    r.finding(
        "[J_z,H] (full non-Abelian)",
        norm(&a.jz.commutator(&h.operator)),
        "the constant color term does not commute with Σ_3/2",
    );
    Ok(r)
}

/// Residuals of `Σ_k + (i/2) ε_{kij} α_i α_j`, all exactly zero for a valid set.
pub fn spin_identity_check(g: &GammaSet) -> CheckReport {
    let mut r = CheckReport::new("Σ = -(i/2) α×α");
    let f = crate::gauge_algebra::levi_civita();
    for k in 0..3 {
        let mut sum = g.sigma_big[k].clone();
        for i in 0..3 {
            for j in 0..3 {
                let e = f[k][i][j];
                if e != 0 {
                    sum += &(&g.alpha[i] * &g.alpha[j]).scale(C64::new(0.0, 0.5 * e as f64));
                }
            }
        }
        r.check_exact(format!("Σ_{} + (i/2)ε_{}ij α_i α_j", k + 1, k + 1), sum.max_abs());
    }
    r
}

/// Fock operators, `H` and the commutator report for a parameter set.
pub fn symmetry_report(g: &GammaSet, c: &ChargeSet, p: &OscParams) -> Result<CheckReport> {
    let (f, h) = crate::hamiltonian::assemble(g, c, p)?;
    let a = build_angular(&f, g)?;
    commutator_report(&a, &h, &f, g, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_dirac_set;
    use crate::hamiltonian::fock_ops;

    fn planar(n: usize) -> OscParams {
        OscParams {
            dimension: 2,
            truncation: n,
            ..OscParams::default()
        }
    }

    #[test]
    fn spin_half_spectrum() {
        let g = build_dirac_set();
        let f = fock_ops(2, 2, 1.0, 1.0).unwrap();
        let a = build_angular(&f, &g).unwrap();
        let local = &a.sz_half.terms()[0].local;
        let vals = herm_eigen(local, 1e-12).unwrap().eigenvalues;
        assert_eq!(vals, vec![-0.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 0.5]);
        assert_eq!(a.sz_half.commutator(&a.sz_half).max_abs(), 0.0);
    }

    #[test]
    fn one_dimension_rejected() {
        let g = build_dirac_set();
        let f = fock_ops(4, 1, 1.0, 1.0).unwrap();
        assert!(matches!(build_angular(&f, &g), Err(Error::UnsupportedDimension(1))));
    }

    #[test]
    fn lz_integer_spectrum_on_complete_shells() {
        let g = build_dirac_set();
        let f = fock_ops(20, 2, 1.0, 1.0).unwrap();
        let a = build_angular(&f, &g).unwrap();
        let vals = lz_shell_eigenvalues(&a, &f, 9).unwrap();
        assert_eq!(vals.len(), 55);
        for v in &vals {
            assert!((v - v.round()).abs() <= 1e-8, "{v}");
        }
        assert_eq!(vals.first().unwrap().round(), -9.0);
        assert_eq!(vals.last().unwrap().round(), 9.0);
        assert!(lz_shell_eigenvalues(&a, &f, 20).is_err());
    }

    #[test]
    fn lz_ladder_relation() {
        let g = build_dirac_set();
        let f = fock_ops(12, 2, 1.0, 1.0).unwrap();
        let a = build_angular(&f, &g).unwrap();
        let guard = f.guard_indices(0.5);
        for s in [1.0, -1.0] {
            let ladder = &f.x[0] + &f.x[1].scale(C64::new(0.0, s));
            let comm = &(&a.lz_fock * &ladder) - &(&ladder * &a.lz_fock);
            let diff = &comm - &ladder.scale_real(s);
            assert!(diff.submatrix(&guard, &guard).max_abs() <= 1e-10);
        }
    }

    #[test]
    fn abelian_conservation_for_several_mass_frequency_pairs() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        for (m, w) in [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0)] {
            let p = OscParams { mass: m, omega: w, ..planar(20) };
            let r = symmetry_report(&g, &c, &p).unwrap();
            assert!(r.all_passed(), "{}", r.render_text());
        }
    }

    #[test]
    fn literal_form_mismatch_at_omega_two() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let r = symmetry_report(&g, &c, &OscParams { omega: 2.0, ..planar(12) }).unwrap();
        assert!(r.get("[L_z,H] - (i(α×p)_z - m(x×α)_z β)").unwrap().value > 0.1);
        let r = symmetry_report(&g, &c, &planar(12)).unwrap();
        assert!(r.get("[L_z,H] - (i(α×p)_z - m(x×α)_z β)").unwrap().value <= 1e-8);
    }

    #[test]
    fn color_term_breaks_jz_conservation() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let p = OscParams { eta: 0.4, phi: [0.0, 0.0, 1.0], ..planar(12) };
        let r = symmetry_report(&g, &c, &p).unwrap();
        assert!(r.all_passed());
        let v = r.get("[J_z,H] (full non-Abelian)").unwrap().value;
        assert!(v > 0.1, "{v}");
    }

    #[test]
    fn spin_identity_exact_and_swapped() {
        let g = build_dirac_set();
        let r = spin_identity_check(&g);
        assert!(r.rows.iter().all(|row| row.value == 0.0));
        let [a1, a2, a3] = g.alpha.clone();
        let swapped = g.with_alpha([a2, a1, a3]);
        let r = spin_identity_check(&swapped);
        assert_eq!(r.get("Σ_3 + (i/2)ε_3ij α_i α_j").unwrap().value, 2.0);
    }
}
