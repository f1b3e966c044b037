//! Dirac-representation gamma matrices and the spin tensor `σ^{μν}`.

use crate::linalg::{anticommutator, commutator, kron, pauli, ComplexMatrix, C64, I};
use crate::report::CheckReport;

/// `η^{μν} = diag(+1, -1, -1, -1)`.
pub const METRIC: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
];

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    /// `γ^0 .. γ^3`.
    pub gamma: [ComplexMatrix; 4],
    /// `β = γ^0`.
    pub beta: ComplexMatrix,
    /// `α^k = γ^0 γ^k`.
    pub alpha: [ComplexMatrix; 3],
    /// `Σ_k = diag(σ_k, σ_k)`.
    pub sigma_big: [ComplexMatrix; 3],
    pub metric: [[f64; 4]; 4],
}

impl GammaSet {
    /// Derives `β`, `α^k` from the given gammas. `Σ_k` is always the block
    /// diagonal `diag(σ_k, σ_k)`, independent of the gammas, so that
    /// corrupted sets can be checked against it.
    pub fn from_gammas(gamma: [ComplexMatrix; 4]) -> Self {
        let beta = gamma[0].clone();
        let alpha = std::array::from_fn(|k| &gamma[0] * &gamma[k + 1]);
        let id2 = ComplexMatrix::identity(2);
        let sigma_big = std::array::from_fn(|k| kron(&id2, &pauli(k)));
        Self {
            gamma,
            beta,
            alpha,
            sigma_big,
            metric: METRIC,
        }
    }

    /// Same set with explicit `α` matrices (used to corrupt a set in tests).
    pub fn with_alpha(mut self, alpha: [ComplexMatrix; 3]) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn identity(&self) -> ComplexMatrix {
        ComplexMatrix::identity(self.beta.rows())
    }
}

/// The Dirac representation: `γ^0 = diag(I, -I)`, `γ^k` with off-diagonal
/// blocks `σ_k` and `-σ_k`.
pub fn build_dirac_set() -> GammaSet {
    let id2 = ComplexMatrix::identity(2);
    let sz = pauli(2);
    // antidiag(1, -1) ⊗ σ_k = [[0, σ_k], [-σ_k, 0]]
    let off = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [-1.0, 0.0]]);
    let g0 = kron(&sz, &id2);
    let gk: [ComplexMatrix; 3] = std::array::from_fn(|k| kron(&off, &pauli(k)));
    let [g1, g2, g3] = gk;
    GammaSet::from_gammas([g0, g1, g2, g3])
}

/// `σ^{μν}`, antisymmetric in its indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaTensor {
    pub components: [[ComplexMatrix; 4]; 4],
}

impl SigmaTensor {
    pub fn get(&self, mu: usize, nu: usize) -> &ComplexMatrix {
        &self.components[mu][nu]
    }
}

/// `σ^{μν} = (i/2)[γ^μ, γ^ν]`.
pub fn sigma_tensor(g: &GammaSet) -> SigmaTensor {
    let half_i = C64::new(0.0, 0.5);
    SigmaTensor {
        components: std::array::from_fn(|mu| {
            std::array::from_fn(|nu| commutator(&g.gamma[mu], &g.gamma[nu]).scale(half_i))
        }),
    }
}

/// Residuals of `{γ^μ, γ^ν} - 2η^{μν}I` for every `μ ≤ ν`. All must vanish
/// exactly.
pub fn verify_clifford(g: &GammaSet) -> CheckReport {
    let mut report = CheckReport::new("Clifford relations {γ^μ, γ^ν} = 2η^{μν} I");
    let id = g.identity();
    for mu in 0..4 {
        for nu in mu..4 {
            let lhs = anticommutator(&g.gamma[mu], &g.gamma[nu]);
            let rhs = id.scale_real(2.0 * g.metric[mu][nu]);
            report.check_exact(format!("{{γ^{mu},γ^{nu}}} - 2η^{mu}{nu} I"), (&lhs - &rhs).max_abs());
        }
    }
    report
}

/// Derived relations: `β² = I`, `α_k² = I`, `{α_k, β} = 0`,
/// `{α_i, α_j} = 2δ_ij I`, `σ^{0k} = iα^k`, antisymmetry of `σ^{μν}`.
pub fn verify_derived(g: &GammaSet) -> CheckReport {
    let mut report = CheckReport::new("Dirac matrix identities");
    let id = g.identity();
    report.check_exact("β² - I", (&(&g.beta * &g.beta) - &id).max_abs());
    for k in 0..3 {
        let a = &g.alpha[k];
        report.check_exact(format!("α_{}² - I", k + 1), (&(a * a) - &id).max_abs());
        report.check_exact(
            format!("{{α_{}, β}}", k + 1),
            anticommutator(a, &g.beta).max_abs(),
        );
        for j in k..3 {
            let expect = if j == k { id.scale_real(2.0) } else { ComplexMatrix::zeros(4, 4) };
            report.check_exact(
                format!("{{α_{}, α_{}}} - 2δ I", k + 1, j + 1),
                (&anticommutator(a, &g.alpha[j]) - &expect).max_abs(),
            );
        }
    }
    let sigma = sigma_tensor(g);
    for k in 1..4 {
        report.check_exact(
            format!("σ^0{k} - iα^{k}"),
            (sigma.get(0, k) - &g.alpha[k - 1].scale(I)).max_abs(),
        );
    }
    let mut antisym = 0.0f64;
    for mu in 0..4 {
        for nu in 0..4 {
            antisym = antisym.max((sigma.get(mu, nu) + sigma.get(nu, mu)).max_abs());
        }
    }
    report.check_exact("σ^{μν} + σ^{νμ}", antisym);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ONE, ZERO};

    #[test]
    fn gamma0_is_diag_plus_minus() {
        let g = build_dirac_set();
        assert_eq!(g.gamma[0], ComplexMatrix::from_real_diag(&[1.0, 1.0, -1.0, -1.0]));
        assert_eq!(g.beta, g.gamma[0]);
    }

    #[test]
    fn alpha3_has_sigma_z_off_diagonal_blocks() {
        let g = build_dirac_set();
        let sz = pauli(2);
        let mut expect = ComplexMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                expect[(i, j + 2)] = sz[(i, j)];
                expect[(i + 2, j)] = sz[(i, j)];
            }
        }
        assert_eq!(g.alpha[2], expect);
    }

    #[test]
    fn gamma0_anticommutes_with_gamma1() {
        let g = build_dirac_set();
        assert!(anticommutator(&g.gamma[0], &g.gamma[1]).is_zero());
    }

    #[test]
    fn sigma_tensor_examples() {
        let g = build_dirac_set();
        let s = sigma_tensor(&g);
        assert_eq!(*s.get(0, 1), g.alpha[0].scale(I));
        assert!(s.get(0, 0).is_zero());
        // (i/2)[γ^1, γ^2] expanded by hand: diag(σ_z, σ_z)
        assert_eq!(*s.get(1, 2), ComplexMatrix::from_real_diag(&[1.0, -1.0, 1.0, -1.0]));
        assert_eq!(*s.get(1, 2), g.sigma_big[2]);
    }

    #[test]
    fn dirac_set_satisfies_all_relations() {
        let g = build_dirac_set();
        let r = verify_clifford(&g);
        assert_eq!(r.rows.len(), 10);
        assert!(r.rows.iter().all(|row| row.value == 0.0));
        assert!(verify_derived(&g).rows.iter().all(|row| row.value == 0.0));
    }

    #[test]
    fn corrupted_gamma1_shows_residual_two() {
        let d = build_dirac_set();
        let g = GammaSet::from_gammas([
            d.gamma[0].clone(),
            d.gamma[0].clone(),
            d.gamma[2].clone(),
            d.gamma[3].clone(),
        ]);
        let r = verify_clifford(&g);
        assert_eq!(r.get("{γ^0,γ^1} - 2η^01 I").unwrap().value, 2.0);
        assert!(!r.all_passed());
    }

    #[test]
    fn zero_set_fails_on_diagonal_pairs() {
        let z = ComplexMatrix::zeros(4, 4);
        let g = GammaSet::from_gammas([z.clone(), z.clone(), z.clone(), z]);
        let r = verify_clifford(&g);
        for mu in 0..4 {
            assert_eq!(r.get(&format!("{{γ^{mu},γ^{mu}}} - 2η^{mu}{mu} I")).unwrap().value, 2.0);
        }
        assert_eq!(r.get("{γ^0,γ^1} - 2η^01 I").unwrap().value, 0.0);
    }

    #[test]
    fn hermiticity_pattern() {
        let g = build_dirac_set();
        assert_eq!(g.gamma[0], g.gamma[0].adjoint());
        for k in 1..4 {
            assert_eq!(g.gamma[k].adjoint(), -&g.gamma[k]);
        }
        for k in 0..3 {
            assert_eq!(g.alpha[k], g.alpha[k].adjoint());
            assert_eq!(g.sigma_big[k], g.sigma_big[k].adjoint());
        }
    }

    #[test]
    fn entries_are_units_or_zero() {
        let g = build_dirac_set();
        let s = sigma_tensor(&g);
        let allowed = [ZERO, ONE, -ONE, I, -I];
        let mats = g
            .gamma
            .iter()
            .chain(&g.alpha)
            .chain(&g.sigma_big)
            .chain(s.components.iter().flatten());
        for m in mats {
            assert!(m.data().iter().all(|z| allowed.contains(z)));
        }
    }
}
