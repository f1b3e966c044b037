//! Exact polynomial four-potentials, gauge transformations and Abelian field
//! tensors over the coordinates `(t, x, y, z)`.
//!
//! Coefficients are arbitrary-precision rationals, so every identity checked
//! here is a polynomial identity with no rounding. Indices are contravariant
//! and derivatives are raised with the `(+, -, -, -)` metric:
//! `∂^0 = ∂_t`, `∂^k = -∂_k`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::report::CheckReport;

pub type Rational = BigRational;
pub type Exponents = [u32; 4];

pub const DEGREE_CAP: u32 = 8;

pub const T: usize = 0;
pub const X: usize = 1;
pub const Y: usize = 2;
pub const Z: usize = 3;

const VAR_NAMES: [&str; 4] = ["t", "x", "y", "z"];

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The rational whose decimal expansion is the shortest one that round-trips
/// to `v`, so `1.2` becomes `6/5` rather than its binary value. `None` for
/// non-finite input.
pub fn decimal_rational(v: f64) -> Option<Rational> {
    if !v.is_finite() {
        return None;
    }
    // `Display` for f64 prints the shortest round-trip digits, never in
    // exponent form.
    let text = v.to_string();
    let (int_part, frac_part) = text.split_once('.').unwrap_or((&text, ""));
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(digits, den))
}

/// Polynomial in `(t, x, y, z)` with exact rational coefficients. No zero
/// coefficient is ever stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<Exponents, Rational>,
}

fn total_degree(e: &Exponents) -> u32 {
    e.iter().sum()
}

impl ScalarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, [0; 4]).expect("degree 0")
    }

    /// The coordinate `x^μ`.
    pub fn var(mu: usize) -> Self {
        let mut e = [0; 4];
        e[mu] = 1;
        Self::monomial(Rational::one(), e).expect("degree 1")
    }

    pub fn monomial(c: Rational, e: Exponents) -> Result<Self> {
        Self::from_terms([(e, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in terms {
            let degree = total_degree(&e);
            if degree > DEGREE_CAP {
                return Err(Error::DegreeOverflow {
                    degree,
                    cap: DEGREE_CAP,
                });
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: Exponents) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(total_degree).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = std::array::from_fn(|k| ea[k] + eb[k]);
                let degree = total_degree(&e);
                if degree > DEGREE_CAP {
                    return Err(Error::DegreeOverflow {
                        degree,
                        cap: DEGREE_CAP,
                    });
                }
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// `∂/∂x^μ`.
    pub fn derivative(&self, mu: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[mu] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[mu] -= 1;
            out.add_term(e2, c * integer(e[mu] as i64));
        }
        out
    }

    /// Raised-index derivative `∂^μ` under `(+, -, -, -)`.
    pub fn raised_derivative(&self, mu: usize) -> Self {
        let d = self.derivative(mu);
        if mu == T {
            d
        } else {
            d.neg()
        }
    }

    pub fn eval(&self, point: [f64; 4]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mono: f64 = e
                    .iter()
                    .zip(point)
                    .map(|(&k, v)| v.powi(k as i32))
                    .product();
                c.to_f64().unwrap_or(f64::NAN) * mono
            })
            .sum()
    }

    /// Largest coefficient magnitude, as a float. Zero iff the polynomial is.
    pub fn max_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// Canonical text form: terms in ascending lexicographic order of the
    /// exponent tuple `(t, x, y, z)`, coefficients written as `p/q`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut s = format!("{}/{}", c.numer(), c.denom());
                for (k, &p) in e.iter().enumerate() {
                    match p {
                        0 => {}
                        1 => s.push_str(&format!("*{}", VAR_NAMES[k])),
                        _ => s.push_str(&format!("*{}^{}", VAR_NAMES[k], p)),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Debug for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarPoly({})", self.render())
    }
}

impl fmt::Display for ScalarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Contravariant four-potential `A^μ`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyFourPotential {
    pub comp: [ScalarPoly; 4],
}

impl PolyFourPotential {
    pub fn new(comp: [ScalarPoly; 4]) -> Self {
        Self { comp }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(std::array::from_fn(|mu| self.comp[mu].add(&other.comp[mu])))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(std::array::from_fn(|mu| self.comp[mu].sub(&other.comp[mu])))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(std::array::from_fn(|mu| self.comp[mu].scale(s)))
    }

    pub fn max_coefficient(&self) -> f64 {
        self.comp.iter().map(ScalarPoly::max_coefficient).fold(0.0, f64::max)
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.comp.iter().map(ScalarPoly::render).collect();
        format!("({})", parts.join(", "))
    }
}

/// Antisymmetric `F^{μν}`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PolyFieldTensor {
    pub comp: [[ScalarPoly; 4]; 4],
}

impl PolyFieldTensor {
    pub fn get(&self, mu: usize, nu: usize) -> &ScalarPoly {
        &self.comp[mu][nu]
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            comp: std::array::from_fn(|mu| {
                std::array::from_fn(|nu| self.comp[mu][nu].sub(&other.comp[mu][nu]))
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            comp: std::array::from_fn(|mu| {
                std::array::from_fn(|nu| self.comp[mu][nu].add(&other.comp[mu][nu]))
            }),
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|mu| (0..4).all(|nu| self.comp[mu][nu] == self.comp[nu][mu].neg()))
    }

    pub fn is_zero(&self) -> bool {
        self.comp.iter().flatten().all(ScalarPoly::is_zero)
    }

    pub fn max_coefficient(&self) -> f64 {
        self.comp
            .iter()
            .flatten()
            .map(ScalarPoly::max_coefficient)
            .fold(0.0, f64::max)
    }

    /// Upper-triangle components, one `F^{μν} = ...` line each.
    pub fn render(&self) -> String {
        let mut out = Vec::new();
        for mu in 0..4 {
            for nu in mu + 1..4 {
                out.push(format!("F^{mu}{nu} = {}", self.comp[mu][nu].render()));
            }
        }
        out.join("\n")
    }
}

/// Contravariant gradient `(∂_t f, -∂_x f, -∂_y f, -∂_z f)`.
pub fn grad4(f: &ScalarPoly) -> PolyFourPotential {
    PolyFourPotential::new(std::array::from_fn(|mu| f.raised_derivative(mu)))
}

/// `A^μ + ∂^μ Λ`.
pub fn gauge_transform(a: &PolyFourPotential, lam: &ScalarPoly) -> PolyFourPotential {
    a.add(&grad4(lam))
}

/// `F^{μν} = ∂^μ A^ν - ∂^ν A^μ`.
pub fn field_tensor_poly(a: &PolyFourPotential) -> PolyFieldTensor {
    PolyFieldTensor {
        comp: std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                a.comp[nu]
                    .raised_derivative(mu)
                    .sub(&a.comp[mu].raised_derivative(nu))
            })
        }),
    }
}

/// `c (u^μ x^ν - u^ν x^μ)` with `u = (1, 0, 0, 0)` and `x^μ = (t, x, y, z)`.
pub fn radial_electric_tensor(c: &Rational) -> PolyFieldTensor {
    let u = |mu: usize| if mu == T { Rational::one() } else { Rational::zero() };
    PolyFieldTensor {
        comp: std::array::from_fn(|mu| {
            std::array::from_fn(|nu| {
                ScalarPoly::var(nu)
                    .scale(&u(mu))
                    .sub(&ScalarPoly::var(mu).scale(&u(nu)))
                    .scale(c)
            })
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Example {
    Ex1Raw,
    Ex1GaugeFn,
    Ex1Covariant,
    Ex2Raw,
    Ex2GaugeFn,
    Ex2Covariant,
}

impl Example {
    pub const ALL: [Example; 6] = [
        Example::Ex1Raw,
        Example::Ex1GaugeFn,
        Example::Ex1Covariant,
        Example::Ex2Raw,
        Example::Ex2GaugeFn,
        Example::Ex2Covariant,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Example::Ex1Raw => "ex1_raw",
            Example::Ex1GaugeFn => "ex1_gauge_fn",
            Example::Ex1Covariant => "ex1_covariant",
            Example::Ex2Raw => "ex2_raw",
            Example::Ex2GaugeFn => "ex2_gauge_fn",
            Example::Ex2Covariant => "ex2_covariant",
        }
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Example::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown example selector `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExampleObject {
    Potential(PolyFourPotential),
    GaugeFunction(ScalarPoly),
}

impl ExampleObject {
    pub fn potential(self) -> Option<PolyFourPotential> {
        match self {
            ExampleObject::Potential(p) => Some(p),
            ExampleObject::GaugeFunction(_) => None,
        }
    }

    pub fn gauge_function(self) -> Option<ScalarPoly> {
        match self {
            ExampleObject::GaugeFunction(f) => Some(f),
            ExampleObject::Potential(_) => None,
        }
    }
}

fn sq(mu: usize) -> ScalarPoly {
    let mut e = [0; 4];
    e[mu] = 2;
    ScalarPoly::monomial(Rational::one(), e).expect("degree 2")
}

fn r_squared(spatial: &[usize]) -> ScalarPoly {
    spatial.iter().fold(ScalarPoly::zero(), |acc, &k| acc.add(&sq(k)))
}

/// `(c/4)·(2 (u·x) x^μ - x² u^μ) · k` with the Minkowski square
/// `x² = t² - r²` over the given spatial axes. `k` is 1 for the first
/// example and 2 for the second (the `1/2 A` prefactor).
fn covariant_form(c: &Rational, spatial: &[usize], prefactor: &Rational) -> PolyFourPotential {
    let t = ScalarPoly::var(T);
    let minkowski_sq = sq(T).sub(&r_squared(spatial));
    let comp = std::array::from_fn(|mu| {
        let mut p = t.mul(&ScalarPoly::var(mu)).expect("degree 2").scale(&integer(2));
        if mu == T {
            p = p.sub(&minkowski_sq);
        }
        if mu != T && !spatial.contains(&mu) {
            p = ScalarPoly::zero();
        }
        p.scale(&(c * prefactor))
    });
    PolyFourPotential::new(comp)
}

/// The named potential or gauge function, with the coupling (`λ` for the
/// first example, `ρ` for the second) substituted.
pub fn example_potential(which: Example, coupling: &Rational) -> ExampleObject {
    let c = coupling;
    let spatial3 = [X, Y, Z];
    let planar = [X, Y];
    match which {
        // λ (r²/2, 0)
        Example::Ex1Raw => ExampleObject::Potential(PolyFourPotential::new([
            r_squared(&spatial3).scale(&(c * rational(1, 2))),
            ScalarPoly::zero(),
            ScalarPoly::zero(),
            ScalarPoly::zero(),
        ])),
        // -(λ/4)(t r² - t³/3)
        Example::Ex1GaugeFn => {
            let t = ScalarPoly::var(T);
            let tr2 = t.mul(&r_squared(&spatial3)).expect("degree 3");
            let t3 = ScalarPoly::monomial(rational(1, 3), [3, 0, 0, 0]).expect("degree 3");
            ExampleObject::GaugeFunction(tr2.sub(&t3).scale(&(c * rational(-1, 4))))
        }
        Example::Ex1Covariant => {
            ExampleObject::Potential(covariant_form(c, &spatial3, &rational(1, 4)))
        }
        // ρ (0, y, -x, 0)
        Example::Ex2Raw => ExampleObject::Potential(PolyFourPotential::new([
            ScalarPoly::zero(),
            ScalarPoly::var(Y).scale(c),
            ScalarPoly::var(X).scale(&-c),
            ScalarPoly::zero(),
        ])),
        // -(ρ/4) t x² - (ρ/4) t y² - (ρ/12) t³
        Example::Ex2GaugeFn => ExampleObject::GaugeFunction(
            ScalarPoly::from_terms([
                ([1, 2, 0, 0], c * rational(-1, 4)),
                ([1, 0, 2, 0], c * rational(-1, 4)),
                ([3, 0, 0, 0], c * rational(-1, 12)),
            ])
            .expect("degree 3"),
        ),
        Example::Ex2Covariant => {
            ExampleObject::Potential(covariant_form(c, &planar, &rational(1, 2)))
        }
    }
}

fn potential(which: Example, c: &Rational) -> PolyFourPotential {
    example_potential(which, c)
        .potential()
        .expect("selector names a potential")
}

fn gauge_fn(which: Example, c: &Rational) -> ScalarPoly {
    example_potential(which, c)
        .gauge_function()
        .expect("selector names a gauge function")
}

/// Gauge-invariance and covariant-form checks for one worked example.
///
/// Example 1: the Abelian tensor is unchanged by the gauge transformation,
/// equals `λ(u^μ x^ν - u^ν x^μ)`, and the covariant form reproduces the
/// transformed potential. Example 2: gauge invariance and the constant
/// magnetic tensor `F^{12} = 2ρ` are checked; the radial covariant form and
/// its tensor do not match the direct computation and are reported as
/// findings.
pub fn gauge_check(example: u8, coupling: &Rational) -> Result<CheckReport> {
    let c = coupling;
    match example {
        1 => {
            let raw = potential(Example::Ex1Raw, c);
            let lam = gauge_fn(Example::Ex1GaugeFn, c);
            let transformed = gauge_transform(&raw, &lam);
            let cov = potential(Example::Ex1Covariant, c);
            let f_raw = field_tensor_poly(&raw);
            let f_tr = field_tensor_poly(&transformed);
            let f_cov = field_tensor_poly(&cov);
            let expected = radial_electric_tensor(c);
            // λ (r² + t², 2 t r) / 4, written out.
            let reference = PolyFourPotential::new([
                r_squared(&[X, Y, Z]).add(&sq(T)).scale(&(c * rational(1, 4))),
                ScalarPoly::from_terms([([1, 1, 0, 0], c * rational(1, 2))]).expect("deg 2"),
                ScalarPoly::from_terms([([1, 0, 1, 0], c * rational(1, 2))]).expect("deg 2"),
                ScalarPoly::from_terms([([1, 0, 0, 1], c * rational(1, 2))]).expect("deg 2"),
            ]);

            let mut r = CheckReport::new(format!("gauge example 1 (λ = {c})"));
            r.check_exact("F(ex1_raw) == F(ex1_transformed)", f_raw.sub(&f_tr).max_coefficient());
            r.check_exact(
                "F(ex1_transformed) == λ(u^μx^ν - u^νx^μ)",
                f_tr.sub(&expected).max_coefficient(),
            );
            r.check_exact(
                "A(ex1_transformed) == λ(r²+t², 2tr)/4",
                transformed.sub(&reference).max_coefficient(),
            );
            r.check_exact(
                "A(ex1_covariant) == A(ex1_transformed)",
                cov.sub(&transformed).max_coefficient(),
            );
            r.check_exact("F(ex1_covariant) == F(ex1_transformed)", f_cov.sub(&f_tr).max_coefficient());
            r.check_exact(
                "F(ex1) antisymmetric",
                if f_raw.is_antisymmetric() && f_tr.is_antisymmetric() { 0.0 } else { 1.0 },
            );
            Ok(r)
        }
        2 => {
            let raw = potential(Example::Ex2Raw, c);
            let lam = gauge_fn(Example::Ex2GaugeFn, c);
            let transformed = gauge_transform(&raw, &lam);
            let cov = potential(Example::Ex2Covariant, c);
            let f_raw = field_tensor_poly(&raw);
            let f_tr = field_tensor_poly(&transformed);
            let f_cov = field_tensor_poly(&cov);
            // ρ (-(x² + y² + t²)/4, y + tx/2, -x + ty/2, 0), written out.
            let reference = PolyFourPotential::new([
                r_squared(&[X, Y]).add(&sq(T)).scale(&(c * rational(-1, 4))),
                ScalarPoly::from_terms([([0, 0, 1, 0], c.clone()), ([1, 1, 0, 0], c * rational(1, 2))])
                    .expect("deg 2"),
                ScalarPoly::from_terms([([0, 1, 0, 0], -c), ([1, 0, 1, 0], c * rational(1, 2))])
                    .expect("deg 2"),
                ScalarPoly::zero(),
            ]);
            let mut magnetic = PolyFieldTensor::default();
            magnetic.comp[X][Y] = ScalarPoly::constant(c * integer(2));
            magnetic.comp[Y][X] = ScalarPoly::constant(c * integer(-2));

            let mut r = CheckReport::new(format!("gauge example 2 (ρ = {c})"));
            r.check_exact("F(ex2_raw) == F(ex2_transformed)", f_raw.sub(&f_tr).max_coefficient());
            r.check_exact(
                "A(ex2_transformed) == reference transformed potential",
                transformed.sub(&reference).max_coefficient(),
            );
            r.check_exact("F(ex2) == 2ρ on (1,2), 0 elsewhere", f_raw.sub(&magnetic).max_coefficient());
            r.check_exact(
                "F(ex2) antisymmetric",
                if f_raw.is_antisymmetric() && f_tr.is_antisymmetric() { 0.0 } else { 1.0 },
            );
            r.finding(
                "F(ex2) - ρ(u^μx^ν - u^νx^μ)",
                f_raw.sub(&radial_electric_tensor(c)).max_coefficient(),
                "direct tensor is a constant magnetic field; the reference radial form does not reproduce it",
            );
            r.finding(
                "A(ex2_covariant) - A(ex2_transformed)",
                cov.sub(&transformed).max_coefficient(),
                "covariant form does not reproduce the transformed potential",
            );
            r.finding(
                "F(ex2_covariant) - F(ex2)",
                f_cov.sub(&f_raw).max_coefficient(),
                "tensor of the covariant form differs from the direct tensor",
            );
            Ok(r)
        }
        other => Err(Error::InvalidInput(format!(
            "gauge example must be 1 or 2, got {other}"
        ))),
    }
}
