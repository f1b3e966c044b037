//! Non-Abelian potentials and field strengths, the `σ^{μν}F_{μν}` interaction
//! term, and the momentum shift it induces.
//!
//! The extra (color) potentials are constant 2×2 matrices:
//! `A_0 = -λ φ_a Q_a` and `A_i = -η ε_{ia} Q_a` with the planar symbol
//! `ε_{ia} = ε_{ia3}`. Their field strength is the pure commutator
//! `F_{μν} = i[A_μ, A_ν]`, computed here directly and compared with the
//! closed forms `F_{0k} = -2ηλ φ_a ε_{kb} f^{abc} Q_c` and
//! `F_{ik} = -2η² ε_{ia} ε_{kb} f^{abc} Q_c`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::clifford::{sigma_tensor, GammaSet};
use crate::error::{Error, Result};
use crate::gauge_algebra::{planar_epsilon, ChargeSet};
use crate::gauge_poly::{decimal_rational, radial_electric_tensor, Exponents, ScalarPoly, T, X, Y};
use crate::hamiltonian::lambda_from_moment;
use crate::linalg::{commutator, kron, pauli, ComplexMatrix, C64, I};
use crate::report::CheckReport;

/// Background fields and couplings.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeParams {
    /// Uniform magnetic background `B^0`.
    pub b0: f64,
    /// Electric background `(E^0_1, E^0_2)`.
    pub e0: [f64; 2],
    /// Non-Abelian vector coupling `η ≥ 0`.
    pub eta: f64,
    /// Scalar coupling `λ`.
    pub lambda: f64,
    /// External scalar field components `φ_a`.
    pub phi: [f64; 3],
    /// Anomalous magnetic moment `κ`.
    pub kappa: f64,
    pub e_charge: f64,
    pub q_charge: f64,
    pub mass: f64,
    pub omega: f64,
}

impl Default for GaugeParams {
    fn default() -> Self {
        Self {
            b0: 0.0,
            e0: [0.0; 2],
            eta: 0.0,
            lambda: 0.0,
            phi: [0.0; 3],
            kappa: 1.0,
            e_charge: 1.0,
            q_charge: 1.0,
            mass: 1.0,
            omega: 1.0,
        }
    }
}

impl GaugeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.mass > 0.0) {
            return Err(Error::InvalidInput(format!("mass must be > 0, got {}", self.mass)));
        }
        if !(self.omega > 0.0) {
            return Err(Error::InvalidInput(format!("omega must be > 0, got {}", self.omega)));
        }
        if !(self.eta >= 0.0) {
            return Err(Error::InvalidInput(format!("eta must be >= 0, got {}", self.eta)));
        }
        Ok(())
    }

    /// `κe/4m`, the anomalous-moment prefactor.
    pub fn moment_prefactor(&self) -> f64 {
        self.kappa * self.e_charge / (4.0 * self.mass)
    }
}

/// Constant color parts of the potential.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtraPotential {
    /// `A_0^{Ext} = -λ φ_a Q_a`.
    pub a0: ComplexMatrix,
    /// `A_i^{Ext} = -η ε_{ia} Q_a`, `i = 1, 2`.
    pub ai: [ComplexMatrix; 2],
}

impl ExtraPotential {
    /// `A_μ` for `μ ∈ 0..4`; the `z` component vanishes.
    pub fn component(&self, mu: usize) -> ComplexMatrix {
        match mu {
            0 => self.a0.clone(),
            1 | 2 => self.ai[mu - 1].clone(),
            _ => ComplexMatrix::zeros(2, 2),
        }
    }
}

pub fn build_extra_potentials(p: &GaugeParams, c: &ChargeSet) -> ExtraPotential {
    let a0 = c.combine(p.phi).scale_real(-p.lambda);
    let ai = std::array::from_fn(|i| {
        let coeffs = std::array::from_fn(|a| planar_epsilon(i, a) as f64);
        c.combine(coeffs).scale_real(-p.eta)
    });
    ExtraPotential { a0, ai }
}

/// `c_i = φ_a ε_{ib} f^{abc} Q_c` for `i = 1, 2, 3` (the third is zero).
pub fn color_shift_vector(phi: [f64; 3], c: &ChargeSet) -> [ComplexMatrix; 3] {
    std::array::from_fn(|i| {
        let mut coeffs = [0.0; 3];
        for (a, &phi_a) in phi.iter().enumerate() {
            for b in 0..3 {
                let eps = planar_epsilon(i, b);
                if eps == 0 {
                    continue;
                }
                for (cc, w) in coeffs.iter_mut().enumerate() {
                    *w += phi_a * eps as f64 * c.f[a][b][cc] as f64;
                }
            }
        }
        c.combine(coeffs)
    })
}

/// Antisymmetric table of 2×2 color matrices indexed by `(μ, ν)`.
pub type ColorTensor = [[ComplexMatrix; 4]; 4];

fn zero_color_tensor() -> ColorTensor {
    std::array::from_fn(|_| std::array::from_fn(|_| ComplexMatrix::zeros(2, 2)))
}

/// `F^{Ext}_{μν} = i[A_μ, A_ν]` by direct matrix commutators.
pub fn ext_field_tensor(ep: &ExtraPotential) -> ColorTensor {
    let a: [ComplexMatrix; 4] = std::array::from_fn(|mu| ep.component(mu));
    std::array::from_fn(|mu| std::array::from_fn(|nu| commutator(&a[mu], &a[nu]).scale(I)))
}

/// Closed forms with the minus sign on the spatial components.
pub fn ext_field_tensor_closed(p: &GaugeParams, c: &ChargeSet) -> ColorTensor {
    ext_field_tensor_closed_with_sign(p, c, -1.0)
}

/// Closed forms `F_{0k} = -2ηλ φ_a ε_{kb} f^{abc} Q_c` and
/// `F_{ik} = spatial_sign · 2η² ε_{ia} ε_{kb} f^{abc} Q_c`, evaluated index by
/// index.
pub fn ext_field_tensor_closed_with_sign(
    p: &GaugeParams,
    c: &ChargeSet,
    spatial_sign: f64,
) -> ColorTensor {
    let mut out = zero_color_tensor();
    for k in 0..3 {
        let mut coeffs = [0.0; 3];
        for a in 0..3 {
            for b in 0..3 {
                let eps = planar_epsilon(k, b) as f64;
                for (cc, w) in coeffs.iter_mut().enumerate() {
                    *w += p.phi[a] * eps * c.f[a][b][cc] as f64;
                }
            }
        }
        let f0k = c.combine(coeffs).scale_real(-2.0 * p.eta * p.lambda);
        out[k + 1][0] = -&f0k;
        out[0][k + 1] = f0k;
    }
    for i in 0..3 {
        for k in 0..3 {
            let mut coeffs = [0.0; 3];
            for a in 0..3 {
                for b in 0..3 {
                    let eps = (planar_epsilon(i, a) * planar_epsilon(k, b)) as f64;
                    if eps == 0.0 {
                        continue;
                    }
                    for (cc, w) in coeffs.iter_mut().enumerate() {
                        *w += eps * c.f[a][b][cc] as f64;
                    }
                }
            }
            out[i + 1][k + 1] = c.combine(coeffs).scale_real(spatial_sign * 2.0 * p.eta * p.eta);
        }
    }
    out
}

pub fn color_tensor_distance(a: &ColorTensor, b: &ColorTensor) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| x.distance(y))
        .fold(0.0, f64::max)
}

/// One component of the non-Abelian tensor: a scalar (Abelian) polynomial
/// times the color identity, plus a constant color matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct NbComponent {
    pub abelian: ScalarPoly,
    pub color: ComplexMatrix,
}

/// `F^{NB}_{μν} = F^{AB}_{μν} + F^{Ext}_{μν}`, lower indices.
#[derive(Debug, Clone, PartialEq)]
pub struct NbFieldTensor {
    pub comp: [[NbComponent; 4]; 4],
}

impl NbFieldTensor {
    pub fn get(&self, mu: usize, nu: usize) -> &NbComponent {
        &self.comp[mu][nu]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|mu| {
            (0..4).all(|nu| {
                let (a, b) = (&self.comp[mu][nu], &self.comp[nu][mu]);
                a.abelian == b.abelian.neg() && a.color == -&b.color
            })
        })
    }
}

fn exact(v: f64) -> BigRational {
    decimal_rational(v).expect("finite parameter")
}

/// Abelian part: `λ x_k` on `(0, k)` plus the backgrounds. With
/// `A_0 = -x_i E^0_i` and `A_i = -½ B^0 ε_{ij} x_j`, the lowered tensor
/// `∂_μ A_ν - ∂_ν A_μ` contributes `E^0_k` on `(0, k)` and `B^0` on `(1, 2)`.
fn abelian_tensor(p: &GaugeParams) -> [[ScalarPoly; 4]; 4] {
    let e = [exact(p.e0[0]), exact(p.e0[1])];
    let half_b = exact(p.b0 * 0.5);
    let a_lower: [ScalarPoly; 4] = [
        ScalarPoly::var(X)
            .scale(&-e[0].clone())
            .sub(&ScalarPoly::var(Y).scale(&e[1])),
        ScalarPoly::var(Y).scale(&-half_b.clone()),
        ScalarPoly::var(X).scale(&half_b),
        ScalarPoly::zero(),
    ];
    let from_potential: [[ScalarPoly; 4]; 4] = std::array::from_fn(|mu| {
        std::array::from_fn(|nu| a_lower[nu].derivative(mu).sub(&a_lower[mu].derivative(nu)))
    });
    let radial = radial_electric_tensor(&exact(p.lambda));
    std::array::from_fn(|mu| std::array::from_fn(|nu| from_potential[mu][nu].add(radial.get(mu, nu))))
}

pub fn nb_field_tensor(p: &GaugeParams, c: &ChargeSet) -> NbFieldTensor {
    let abelian = abelian_tensor(p);
    let color = ext_field_tensor(&build_extra_potentials(p, c));
    NbFieldTensor {
        comp: std::array::from_fn(|mu| {
            std::array::from_fn(|nu| NbComponent {
                abelian: abelian[mu][nu].clone(),
                color: color[mu][nu].clone(),
            })
        }),
    }
}

/// Polynomial in `(t, x, y, z)` with matrix coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPoly {
    dim: usize,
    terms: BTreeMap<Exponents, ComplexMatrix>,
}

impl OperatorPoly {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: ComplexMatrix) -> Self {
        let mut out = Self::zero(m.rows());
        out.add_term([0; 4], &m);
        out
    }

    /// `s(x) · m` for a scalar polynomial `s`.
    pub fn from_scalar(s: &ScalarPoly, m: &ComplexMatrix) -> Self {
        let mut out = Self::zero(m.rows());
        for (e, c) in s.terms() {
            out.add_term(*e, &m.scale_real(c.to_f64().unwrap_or(f64::NAN)));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn add_term(&mut self, e: Exponents, m: &ComplexMatrix) {
        if m.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += m;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, m.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ComplexMatrix)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Exponents) -> ComplexMatrix {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| ComplexMatrix::zeros(self.dim, self.dim))
    }

    pub fn constant_part(&self) -> ComplexMatrix {
        self.coefficient([0; 4])
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, m) in &other.terms {
            out.add_term(*e, m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, m) in &self.terms {
            out.add_term(*e, &m.scale(s));
        }
        out
    }

    pub fn left_mul(&self, m: &ComplexMatrix) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            out.add_term(*e, &(m * c));
        }
        out
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, m) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.add_term(*e, m);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(ComplexMatrix::max_abs).fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }
}

/// The contraction `prefactor · σ^{μν} F_{μν}` on spinor ⊗ color, split into
/// its sources.
#[derive(Debug, Clone)]
pub struct InteractionTerm {
    /// Full double sum over `μ, ν`.
    pub total: OperatorPoly,
    /// Position-dependent part (from `λ x_k`).
    pub position: OperatorPoly,
    /// Constant electric background part (from `E^0`).
    pub electric: ComplexMatrix,
    /// Constant magnetic background part (from `B^0`).
    pub magnetic: ComplexMatrix,
    /// Constant color part from `F^{Ext}_{0k}`.
    pub temporal_color: ComplexMatrix,
    /// Constant color part from `F^{Ext}_{ik}`.
    pub spatial_color: ComplexMatrix,
}

pub fn interaction_term(f: &NbFieldTensor, g: &GammaSet, prefactor: f64) -> InteractionTerm {
    let sigma = sigma_tensor(g);
    let id2 = ComplexMatrix::identity(2);
    let mut total = OperatorPoly::zero(8);
    let mut position = OperatorPoly::zero(8);
    let mut electric = ComplexMatrix::zeros(8, 8);
    let mut magnetic = ComplexMatrix::zeros(8, 8);
    let mut temporal_color = ComplexMatrix::zeros(8, 8);
    let mut spatial_color = ComplexMatrix::zeros(8, 8);

    for mu in 0..4 {
        for nu in 0..4 {
            if mu == nu {
                continue;
            }
            let s = sigma.get(mu, nu).scale_real(prefactor);
            let comp = f.get(mu, nu);
            let scalar_part = OperatorPoly::from_scalar(&comp.abelian, &kron(&s, &id2));
            let color_part = kron(&s, &comp.color);
            total = total.add(&scalar_part).add(&OperatorPoly::constant(color_part.clone()));

            let constant = scalar_part.constant_part();
            let temporal = mu == T || nu == T;
            position = position.add(&scalar_part.sub(&OperatorPoly::constant(constant.clone())));
            if temporal {
                electric += &constant;
                temporal_color += &color_part;
            } else {
                magnetic += &constant;
                spatial_color += &color_part;
            }
        }
    }
    InteractionTerm {
        total,
        position,
        electric,
        magnetic,
        temporal_color,
        spatial_color,
    }
}

/// Per-direction momentum shifts `Δ_i`, so that `β · (prefactor σF)` equals
/// `Σ_i α_i Δ_i` (`p_i → p_i + Δ_i`).
#[derive(Debug, Clone)]
pub struct MomentumShift {
    pub delta: [OperatorPoly; 3],
    /// Abelian part (position, `E^0`, `B^0`).
    pub abelian: [OperatorPoly; 3],
    /// Constant color part from `F^{Ext}_{0k}`.
    pub temporal_color: [ComplexMatrix; 3],
    /// Constant color part from `F^{Ext}_{ik}` (zero when dropped).
    pub spatial_color: [ComplexMatrix; 3],
}

/// Multiplies the interaction term by `β` and distributes it over the
/// directions. A temporal component `(0, k)` enters `Δ_k` as
/// `2·prefactor·α_k β σ^{0k} ⊗ F_{0k}`; a spatial component `(i, k)` enters
/// `Δ_i` as `prefactor·α_i β σ^{ik} ⊗ F_{ik}`. With `drop_eta_squared` the
/// quadratic color piece `F^{Ext}_{ik}` is discarded.
pub fn nonminimal_substitution_with(
    f: &NbFieldTensor,
    g: &GammaSet,
    prefactor: f64,
    drop_eta_squared: bool,
) -> MomentumShift {
    let sigma = sigma_tensor(g);
    let id2 = ComplexMatrix::identity(2);
    let mut abelian: [OperatorPoly; 3] = std::array::from_fn(|_| OperatorPoly::zero(8));
    let mut temporal_color: [ComplexMatrix; 3] = std::array::from_fn(|_| ComplexMatrix::zeros(8, 8));
    let mut spatial_color: [ComplexMatrix; 3] = std::array::from_fn(|_| ComplexMatrix::zeros(8, 8));

    for k in 0..3 {
        let spinor = (&(&g.alpha[k] * &g.beta) * sigma.get(0, k + 1)).scale_real(2.0 * prefactor);
        let comp = f.get(0, k + 1);
        abelian[k] = abelian[k].add(&OperatorPoly::from_scalar(&comp.abelian, &kron(&spinor, &id2)));
        temporal_color[k] += &kron(&spinor, &comp.color);
    }
    for i in 0..3 {
        for k in 0..3 {
            if i == k {
                continue;
            }
            let spinor = (&(&g.alpha[i] * &g.beta) * sigma.get(i + 1, k + 1)).scale_real(prefactor);
            let comp = f.get(i + 1, k + 1);
            abelian[i] = abelian[i].add(&OperatorPoly::from_scalar(&comp.abelian, &kron(&spinor, &id2)));
            if !drop_eta_squared {
                spatial_color[i] += &kron(&spinor, &comp.color);
            }
        }
    }
    let delta = std::array::from_fn(|i| {
        abelian[i]
            .add(&OperatorPoly::constant(temporal_color[i].clone()))
            .add(&OperatorPoly::constant(spatial_color[i].clone()))
    });
    MomentumShift {
        delta,
        abelian,
        temporal_color,
        spatial_color,
    }
}

/// Shift for the anomalous-moment coupling, prefactor `κe/4m`.
pub fn nonminimal_substitution(
    f: &NbFieldTensor,
    g: &GammaSet,
    p: &GaugeParams,
    drop_eta_squared: bool,
) -> MomentumShift {
    nonminimal_substitution_with(f, g, p.moment_prefactor(), drop_eta_squared)
}

/// Least-squares `s` minimizing `||a - s b||`; `None` when `b = 0`.
pub fn matrix_ratio(a: &ComplexMatrix, b: &ComplexMatrix) -> Option<C64> {
    let den: f64 = b.data().iter().map(|z| z.norm_sqr()).sum();
    if den == 0.0 {
        return None;
    }
    let num: C64 = b.data().iter().zip(a.data()).map(|(y, x)| y.conj() * x).sum();
    Some(num / den)
}

/// Real coefficients `(a, b, c, d)` of `a·I + b·σ1 + c·σ2 + d·σ3`.
pub fn pauli_coefficients(m: &ComplexMatrix) -> [f64; 4] {
    let basis = [
        ComplexMatrix::identity(2),
        pauli(0),
        pauli(1),
        pauli(2),
    ];
    std::array::from_fn(|k| ((m * &basis[k]).trace() * 0.5).re)
}

pub fn render_color(m: &ComplexMatrix) -> String {
    let [a, b, c, d] = pauli_coefficients(m);
    format!("{a:+.6}·I {b:+.6}·σ1 {c:+.6}·σ2 {d:+.6}·σ3")
}

/// Component listing for `μ < ν`.
pub fn render_nb_tensor(t: &NbFieldTensor) -> String {
    let mut lines = Vec::new();
    for mu in 0..4 {
        for nu in mu + 1..4 {
            let c = t.get(mu, nu);
            lines.push(format!(
                "F_{mu}{nu} = [{}] + [{}]",
                c.abelian.render(),
                render_color(&c.color)
            ));
        }
    }
    lines.join("\n")
}

/// Direct-versus-closed-form comparison of the non-Abelian tensor and the
/// interaction-term coefficients. Discrepancies with reference forms are
/// findings; agreement of the direct commutator with the adopted closed
/// forms and the Abelian oscillator reduction are checks.
pub fn fields_report(p: &GaugeParams, c: &ChargeSet, g: &GammaSet) -> Result<CheckReport> {
    p.validate()?;
    let mut r = CheckReport::new("non-Abelian field tensor");
    let ep = build_extra_potentials(p, c);
    let direct = ext_field_tensor(&ep);
    let closed = ext_field_tensor_closed(p, c);
    let plus = ext_field_tensor_closed_with_sign(p, c, 1.0);

    let hermitian = direct.iter().flatten().map(ComplexMatrix::hermiticity_residual).fold(0.0, f64::max);
    r.check_at_most("F^Ext Hermitian", hermitian, 1e-15);
    let tensor = nb_field_tensor(p, c);
    r.check_exact("F^NB antisymmetric", if tensor.is_antisymmetric() { 0.0 } else { 1.0 });

    let temporal_gap = (1..4)
        .map(|k| direct[0][k].distance(&closed[0][k]))
        .fold(0.0, f64::max);
    let mut spatial_gap = 0.0f64;
    let mut plus_gap = 0.0f64;
    for i in 1..4 {
        for k in 1..4 {
            spatial_gap = spatial_gap.max(direct[i][k].distance(&closed[i][k]));
            plus_gap = plus_gap.max(direct[i][k].distance(&plus[i][k]));
        }
    }
    let closed_ok = c.kappa_q == 1.0;
    let note = if closed_ok { "" } else { " (closed forms assume κ_Q = 1)" };
    if closed_ok {
        r.check_at_most("F^Ext_0k direct - closed (-2ηλ φ ε f Q)", temporal_gap, 1e-12);
        r.check_at_most("F^Ext_ik direct - closed (-2η² ε ε f Q)", spatial_gap, 1e-12);
    } else {
        r.finding("F^Ext_0k direct - closed", temporal_gap, format!("residual{note}"));
        r.finding("F^Ext_ik direct - closed", spatial_gap, format!("residual{note}"));
    }
    r.finding(
        "F^Ext_ik direct - closed with +2η²",
        plus_gap,
        "reference +2η² variant of the spatial components",
    );

    // F_12 given in reference form as B0·1 + 2η² Q_3.
    let reference_12 = &ComplexMatrix::identity(2).scale_real(p.b0) + &c.q[2].scale_real(2.0 * p.eta * p.eta);
    let b0_direct = tensor.get(1, 2).abelian.terms().next().map(|(_, v)| v.to_f64().unwrap_or(0.0)).unwrap_or(0.0);
    let direct_12 = &ComplexMatrix::identity(2).scale_real(b0_direct) + &tensor.get(1, 2).color;
    r.finding(
        "F_12 direct - (B0 + 2η² Q_3)",
        direct_12.distance(&reference_12),
        "reference magnetic component carries the opposite color sign",
    );
    // F_0k color parts given in reference form as +2ηλ(φ_k Q_3 - φ_3 Q_k).
    let shifts = color_shift_vector(p.phi, c);
    let mut reference_temporal_gap = 0.0f64;
    for k in 0..2 {
        let reference = shifts[k].scale_real(2.0 * p.eta * p.lambda);
        reference_temporal_gap = reference_temporal_gap.max(direct[0][k + 1].distance(&reference));
    }
    r.finding(
        "F_0k color direct - 2ηλ(φ_k Q_3 - φ_3 Q_k)",
        reference_temporal_gap,
        "reference component form carries the opposite sign of the commutator result",
    );

    // Interaction-term coefficients against the reference three-term expansion.
    let pref = p.moment_prefactor();
    let term = interaction_term(&tensor, g, pref);
    let id2 = ComplexMatrix::identity(2);
    let coupling = p.kappa * p.e_charge / (2.0 * p.mass);
    let mut reference_middle = ComplexMatrix::zeros(8, 8);
    let mut reference_third = ComplexMatrix::zeros(8, 8);
    for k in 0..3 {
        reference_middle += &kron(&g.alpha[k], &shifts[k]).scale(C64::new(0.0, -coupling * p.lambda * p.eta));
    }
    for i in 0..3 {
        for k in 0..3 {
            let mut coeffs = [0.0; 3];
            for a in 0..3 {
                for b in 0..3 {
                    let eps = (planar_epsilon(i, a) * planar_epsilon(k, b)) as f64;
                    for (cc, w) in coeffs.iter_mut().enumerate() {
                        *w += eps * c.f[a][b][cc] as f64;
                    }
                }
            }
            let color = c.combine(coeffs);
            reference_third += &kron(&(&g.alpha[i] * &g.alpha[k]), &color)
                .scale(C64::new(0.0, coupling * p.eta * p.eta));
        }
    }
    match matrix_ratio(&term.temporal_color, &reference_middle) {
        Some(ratio) => r.finding(
            "interaction temporal-color term: direct / reference",
            ratio.re,
            "direct contraction of 2σ^{0k}F_0k gives κe/m where the reference form has κe/2m",
        ),
        None => r.finding("interaction temporal-color term: direct / reference", 0.0, "term vanishes for these parameters"),
    };
    r.finding(
        "interaction spatial-color term: direct - reference",
        term.spatial_color.distance(&reference_third),
        "zero when the spatial closed form carries -2η²",
    );
    let mut alpha_x = OperatorPoly::zero(8);
    for k in 0..3 {
        alpha_x = alpha_x.add(&OperatorPoly::from_scalar(
            &ScalarPoly::var(k + 1),
            &kron(&g.alpha[k], &id2).scale(C64::new(0.0, coupling * p.lambda)),
        ));
    }
    r.check_at_most(
        "interaction position part - i(κe/2m)λ α·x",
        term.position.distance(&alpha_x),
        1e-12,
    );
    r.finding(
        "interaction position part reads α·x, reference form reads α·p",
        term.position.max_abs(),
        "contraction is linear in position; the momentum form is a typo",
    );

    // Momentum shift at the oscillator coupling λ = 2m²ω/κe.
    let lam_osc = lambda_from_moment(p.mass, p.omega, p.kappa, p.e_charge)?;
    let osc = GaugeParams {
        lambda: lam_osc,
        e0: [0.0; 2],
        b0: 0.0,
        ..p.clone()
    };
    let shift = nonminimal_substitution(&nb_field_tensor(&osc, c), g, &osc, true);
    let mut abelian_gap = 0.0f64;
    let beta_color = kron(&g.beta, &id2);
    for i in 0..3 {
        let expect = OperatorPoly::from_scalar(
            &ScalarPoly::var(i + 1),
            &beta_color.scale(C64::new(0.0, -p.mass * p.omega)),
        );
        abelian_gap = abelian_gap.max(shift.abelian[i].distance(&expect));
    }
    r.check_at_most("Δ_i abelian - (-imωβx_i) at λ = 2m²ω/κe", abelian_gap, 1e-12);
    let mut eq55 = ComplexMatrix::zeros(8, 8);
    let mut direct_color = ComplexMatrix::zeros(8, 8);
    for i in 0..2 {
        eq55 += &kron(&g.beta, &shifts[i]).scale(C64::new(0.0, -p.mass * p.omega * p.eta));
        direct_color += &shift.temporal_color[i];
    }
    match matrix_ratio(&direct_color, &eq55) {
        Some(ratio) => r.finding(
            "Δ color part: direct / (-imωηβ c_i)",
            ratio.re,
            "direct shift is +2imωηβ c_i; the conclusion prints -imωηβ c_i",
        ),
        None => r.finding("Δ color part: direct / (-imωηβ c_i)", 0.0, "color shift vanishes for these parameters"),
    };
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_dirac_set;
    use crate::gauge_algebra::build_charges;
    use crate::gauge_poly::integer;

    fn params(eta: f64, lambda: f64, phi: [f64; 3]) -> GaugeParams {
        GaugeParams {
            eta,
            lambda,
            phi,
            ..GaugeParams::default()
        }
    }

    fn sigma(k: usize) -> ComplexMatrix {
        pauli(k)
    }

    #[test]
    fn extra_potential_examples() {
        let c = ChargeSet::default();
        let ep = build_extra_potentials(&params(0.0, 1.0, [1.0, 0.0, 0.0]), &c);
        assert_eq!(ep.a0, -&sigma(0));
        let ep = build_extra_potentials(&params(1.0, 0.0, [0.0; 3]), &c);
        assert_eq!(ep.ai[0], -&sigma(1));
        assert_eq!(ep.ai[1], sigma(0));
        let ep = build_extra_potentials(&params(0.0, 0.0, [0.3, 0.2, 0.1]), &c);
        assert!(ep.a0.is_zero() && ep.ai.iter().all(ComplexMatrix::is_zero));
    }

    #[test]
    fn direct_commutator_examples() {
        let c = ChargeSet::default();
        let f = ext_field_tensor(&build_extra_potentials(&params(1.0, 1.0, [1.0, 0.0, 0.0]), &c));
        assert!(f[0][1].approx_eq(&sigma(2).scale_real(-2.0), 1e-15));
        let f = ext_field_tensor(&build_extra_potentials(&params(0.5, 2.0, [0.0, 0.0, 1.0]), &c));
        assert!(f[0][2].approx_eq(&sigma(1).scale_real(2.0), 1e-15));
        let f = ext_field_tensor(&build_extra_potentials(&params(1.0, 0.0, [0.0; 3]), &c));
        assert!(f[1][2].approx_eq(&sigma(2).scale_real(-2.0), 1e-15));
    }

    #[test]
    fn closed_form_examples() {
        let c = ChargeSet::default();
        let f = ext_field_tensor_closed(&params(1.0, 1.0, [1.0, 0.0, 0.0]), &c);
        assert!(f[0][1].approx_eq(&sigma(2).scale_real(-2.0), 1e-15));
        let f = ext_field_tensor_closed(&params(0.5, 2.0, [0.0, 0.0, 1.0]), &c);
        assert!(f[0][2].approx_eq(&sigma(1).scale_real(2.0), 1e-15));
        let f = ext_field_tensor_closed(&params(0.0, 2.0, [1.0, 1.0, 1.0]), &c);
        for i in 1..4 {
            for k in 1..4 {
                assert!(f[i][k].is_zero());
            }
        }
    }

    #[test]
    fn plus_sign_variant_disagrees_with_commutator() {
        let c = ChargeSet::default();
        let p = params(1.0, 0.0, [0.0; 3]);
        let direct = ext_field_tensor(&build_extra_potentials(&p, &c));
        let plus = ext_field_tensor_closed_with_sign(&p, &c, 1.0);
        assert!((direct[1][2].distance(&plus[1][2]) - 4.0).abs() < 1e-15);
    }

    #[test]
    fn nb_tensor_examples() {
        let c = ChargeSet::default();
        let g = GaugeParams { b0: 3.0, ..GaugeParams::default() };
        let t = nb_field_tensor(&g, &c);
        assert_eq!(t.get(1, 2).abelian, ScalarPoly::constant(integer(3)));
        assert!(t.get(1, 2).color.is_zero());

        let t = nb_field_tensor(&params(0.0, 1.0, [0.0; 3]), &c);
        assert_eq!(t.get(0, 1).abelian, ScalarPoly::var(X));
        assert!(t.get(0, 1).color.is_zero());

        let g = GaugeParams { b0: 1.0, eta: 1.0, ..GaugeParams::default() };
        let t = nb_field_tensor(&g, &c);
        assert_eq!(t.get(1, 2).abelian, ScalarPoly::constant(integer(1)));
        assert!(t.get(1, 2).color.approx_eq(&sigma(2).scale_real(-2.0), 1e-15));
        assert!(t.is_antisymmetric());
    }

    #[test]
    fn electric_background_enters_temporal_components() {
        let c = ChargeSet::default();
        let g = GaugeParams { e0: [0.5, -2.0], ..GaugeParams::default() };
        let t = nb_field_tensor(&g, &c);
        assert_eq!(t.get(0, 1).abelian, ScalarPoly::constant(crate::gauge_poly::rational(1, 2)));
        assert_eq!(t.get(0, 2).abelian, ScalarPoly::constant(integer(-2)));
        assert_eq!(t.get(2, 0).abelian, ScalarPoly::constant(integer(2)));
    }

    #[test]
    fn abelian_interaction_is_alpha_dot_x() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let p = GaugeParams { lambda: 1.7, kappa: 0.9, e_charge: 1.3, mass: 1.1, ..GaugeParams::default() };
        let term = interaction_term(&nb_field_tensor(&p, &c), &g, p.moment_prefactor());
        let coupling = p.kappa * p.e_charge / (2.0 * p.mass) * p.lambda;
        let mut expect = OperatorPoly::zero(8);
        for k in 0..3 {
            expect = expect.add(&OperatorPoly::from_scalar(
                &ScalarPoly::var(k + 1),
                &kron(&g.alpha[k], &ComplexMatrix::identity(2)).scale(C64::new(0.0, coupling)),
            ));
        }
        assert!(term.total.distance(&expect) < 1e-14);
        assert!(term.temporal_color.is_zero() && term.spatial_color.is_zero());
    }

    #[test]
    fn spatial_color_interaction_is_sigma_ik_contraction() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let p = params(1.0, 0.0, [0.0; 3]);
        let pref = 0.35;
        let t = nb_field_tensor(&p, &c);
        let term = interaction_term(&t, &g, pref);
        let s = sigma_tensor(&g);
        let mut expect = ComplexMatrix::zeros(8, 8);
        for i in 1..4 {
            for k in i + 1..4 {
                expect += &kron(s.get(i, k), &t.get(i, k).color).scale_real(2.0 * pref);
            }
        }
        assert!(term.total.distance(&OperatorPoly::constant(expect.clone())) < 1e-14);
        assert!(term.spatial_color.approx_eq(&expect, 1e-14));
    }

    #[test]
    fn zero_parameters_give_zero_operator() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let p = GaugeParams { kappa: 0.0, ..GaugeParams::default() };
        let t = nb_field_tensor(&p, &c);
        assert!(interaction_term(&t, &g, 0.25).total.is_zero());
        let shift = nonminimal_substitution(&t, &g, &p, false);
        assert!(shift.delta.iter().all(OperatorPoly::is_zero));
    }

    #[test]
    fn pieces_sum_to_total() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let p = GaugeParams {
            b0: 0.7,
            e0: [0.2, -0.4],
            eta: 0.6,
            lambda: 1.3,
            phi: [0.3, -0.8, 0.5],
            ..GaugeParams::default()
        };
        let term = interaction_term(&nb_field_tensor(&p, &c), &g, 0.3);
        let sum = term
            .position
            .add(&OperatorPoly::constant(term.electric.clone()))
            .add(&OperatorPoly::constant(term.magnetic.clone()))
            .add(&OperatorPoly::constant(term.temporal_color.clone()))
            .add(&OperatorPoly::constant(term.spatial_color.clone()));
        assert!(sum.distance(&term.total) < 1e-14);
    }

    #[test]
    fn shift_reassembles_beta_times_interaction() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let p = GaugeParams {
            b0: 0.7,
            e0: [0.2, -0.4],
            eta: 0.6,
            lambda: 1.3,
            phi: [0.3, -0.8, 0.5],
            ..GaugeParams::default()
        };
        let t = nb_field_tensor(&p, &c);
        let pref = 0.45;
        let shift = nonminimal_substitution_with(&t, &g, pref, false);
        let id2 = ComplexMatrix::identity(2);
        let mut sum = OperatorPoly::zero(8);
        for i in 0..3 {
            sum = sum.add(&shift.delta[i].left_mul(&kron(&g.alpha[i], &id2)));
        }
        let target = interaction_term(&t, &g, pref).total.left_mul(&kron(&g.beta, &id2));
        assert!(sum.distance(&target) < 1e-14);
    }

    #[test]
    fn oscillator_coupling_gives_standard_shift() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let (m, w, kappa, e) = (1.3, 0.7, 0.9, 1.1);
        let lam = lambda_from_moment(m, w, kappa, e).unwrap();
        let p = GaugeParams { lambda: lam, kappa, e_charge: e, mass: m, omega: w, ..GaugeParams::default() };
        let shift = nonminimal_substitution(&nb_field_tensor(&p, &c), &g, &p, false);
        let beta = kron(&g.beta, &ComplexMatrix::identity(2));
        for i in 0..3 {
            let expect = OperatorPoly::from_scalar(&ScalarPoly::var(i + 1), &beta.scale(C64::new(0.0, -m * w)));
            assert!(shift.delta[i].distance(&expect) < 1e-14);
        }
    }

    #[test]
    fn color_shift_direction_with_phi3() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let shifts = color_shift_vector([0.0, 0.0, 1.0], &c);
        assert_eq!(shifts[0], -&sigma(0));
        assert_eq!(shifts[1], -&sigma(1));
        assert!(shifts[2].is_zero());

        let (m, w, eta) = (1.0, 1.0, 0.3);
        let lam = lambda_from_moment(m, w, 1.0, 1.0).unwrap();
        let p = GaugeParams { lambda: lam, eta, phi: [0.0, 0.0, 1.0], ..GaugeParams::default() };
        let shift = nonminimal_substitution(&nb_field_tensor(&p, &c), &g, &p, true);
        for i in 0..2 {
            let unit = kron(&g.beta, &sigma(i)).scale(I);
            let ratio = matrix_ratio(&shift.temporal_color[i], &unit).unwrap();
            assert!(shift.temporal_color[i].distance(&unit.scale(ratio)) < 1e-14);
            // direct: +2imωη β c_i with c_i = -σ_i
            assert!((ratio - C64::new(-2.0 * m * w * eta, 0.0)).norm() < 1e-14);
        }
        assert!(shift.spatial_color.iter().all(ComplexMatrix::is_zero));
    }

    #[test]
    fn color_shift_term_is_hermitian_in_hamiltonian() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        for phi in [[1.0, 0.0, 0.0], [0.3, -0.2, 0.9]] {
            let shifts = color_shift_vector(phi, &c);
            for i in 0..3 {
                let op = kron(&(&g.alpha[i] * &g.beta).scale(-I), &shifts[i]);
                assert_eq!(op, op.adjoint());
            }
        }
    }

    #[test]
    fn closed_forms_differ_when_normalization_changes() {
        let c = build_charges(0.5).unwrap();
        let p = params(0.7, 1.1, [0.2, 0.4, -0.3]);
        let direct = ext_field_tensor(&build_extra_potentials(&p, &c));
        assert!(color_tensor_distance(&direct, &ext_field_tensor_closed(&p, &c)) > 1e-3);
    }

    #[test]
    fn pauli_decomposition_round_trip() {
        let m = &(&sigma(0).scale_real(0.5) + &sigma(2).scale_real(-1.5)) + &ComplexMatrix::identity(2).scale_real(2.0);
        let coeffs = pauli_coefficients(&m);
        assert_eq!(coeffs, [2.0, 0.5, 0.0, -1.5]);
        assert!(render_color(&m).contains("+0.500000·σ1"));
    }

    #[test]
    fn report_default_parameters() {
        let g = build_dirac_set();
        let c = ChargeSet::default();
        let p = GaugeParams { eta: 0.4, lambda: 1.2, phi: [0.0, 0.0, 1.0], b0: 0.5, ..GaugeParams::default() };
        let r = fields_report(&p, &c, &g).unwrap();
        assert!(r.all_passed(), "{}", r.render_text());
        let ratio = r.get("interaction temporal-color term: direct / reference").unwrap().value;
        assert!((ratio - 2.0).abs() < 1e-12);
        let third = r.get("interaction spatial-color term: direct - reference").unwrap().value;
        assert!(third < 1e-14);
        let d = r.get("Δ color part: direct / (-imωηβ c_i)").unwrap().value;
        assert!((d + 2.0).abs() < 1e-12);
        assert!(fields_report(&GaugeParams { mass: -1.0, ..p }, &c, &g).is_err());
    }
}
