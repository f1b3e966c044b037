use nadosc_core::clifford::build_dirac_set;
use nadosc_core::gauge_algebra::ChargeSet;
use nadosc_core::hamiltonian::{assemble, beta_local, spectrum, OscParams};
use nadosc_core::linalg::{kron, ComplexMatrix, KronOperator, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(n: usize) -> OscParams {
    OscParams {
        dimension: 1,
        truncation: n,
        ..OscParams::default()
    }
}

#[test]
fn hermitian_over_random_draws() {
    let g = build_dirac_set();
    let c = ChargeSet::default();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for k in 0..200 {
        let d = 1 + k % 2;
        let p = OscParams {
            dimension: d,
            truncation: if d == 1 { rng.gen_range(1..24) } else { rng.gen_range(1..6) },
            mass: rng.gen_range(0.1..3.0),
            omega: rng.gen_range(0.1..3.0),
            eta: rng.gen_range(0.0..2.0),
            phi: std::array::from_fn(|_| rng.gen_range(-1.0..1.0)),
            extra_sign: if rng.gen_bool(0.5) { 1.0 } else { -1.0 },
            ..OscParams::default()
        };
        let (_, h) = assemble(&g, &c, &p).unwrap();
        let m = h.matrix();
        assert!(m.hermiticity_residual() <= 1e-12 * m.max_abs().max(1.0), "{p:?}");
    }
}

#[test]
fn zero_eta_is_exactly_the_abelian_oscillator() {
    let g = build_dirac_set();
    let c = ChargeSet::default();
    for d in [1, 2] {
        let p = OscParams {
            dimension: d,
            truncation: 5,
            mass: 1.3,
            omega: 0.7,
            phi: [0.4, -0.2, 0.9],
            ..OscParams::default()
        };
        let (f, h) = assemble(&g, &c, &p).unwrap();
        let id2 = ComplexMatrix::identity(2);
        let beta = beta_local(&g);
        let mut expect = kron(&ComplexMatrix::identity(f.fock_dim()), &beta.scale_real(p.mass));
        for i in 0..d {
            let alpha = kron(&g.alpha[i], &id2);
            expect += &kron(&f.p[i], &alpha);
            expect += &kron(&f.x[i], &(&alpha * &beta).scale(C64::new(0.0, -p.mass * p.omega)));
        }
        assert_eq!(*h.matrix(), expect);
    }
}

#[test]
fn squared_hamiltonian_on_guard_band() {
    let g = build_dirac_set();
    let c = ChargeSet::default();
    for (m, w) in [(1.0, 1.0), (1.5, 0.6)] {
        let p = OscParams { mass: m, omega: w, ..line(64) };
        let (f, h) = assemble(&g, &c, &p).unwrap();
        let h2 = h.operator.mul(&h.operator);
        let x2 = &f.x[0] * &f.x[0];
        let p2 = &f.p[0] * &f.p[0];
        let scalar = &(&p2 + &x2.scale_real(m * m * w * w)) + &ComplexMatrix::identity(64).scale_real(m * m);
        let target = KronOperator::fock(scalar, 8)
            .sub(&KronOperator::local(64, beta_local(&g).scale_real(m * w)));
        let guard = f.guard_indices(p.guard_fraction);
        let residual = h2.sub(&target).max_abs_on(Some(&guard));
        assert!(residual <= 1e-10 * h2.max_abs_on(Some(&guard)).max(1.0), "{residual}");
    }
}

#[test]
fn converged_levels_match_oscillator_energies() {
    let g = build_dirac_set();
    let c = ChargeSet::default();
    let (_, h) = assemble(&g, &c, &line(64)).unwrap();
    let s = spectrum(&h, &g, &c, true).unwrap();
    assert_eq!(s.eigenvalues.len(), 512);
    let levels = s.positive_levels(1e-9);
    assert!(levels.len() >= 6, "{levels:?}");
    for (n, level) in levels.iter().take(6).enumerate() {
        let exact = (1.0 + 2.0 * n as f64).sqrt();
        assert!((level - exact).abs() <= 1e-6, "level {n}: {level} vs {exact}");
    }
}

#[test]
fn color_term_shifts_the_spectrum() {
    let g = build_dirac_set();
    let c = ChargeSet::default();
    let base = line(16);
    let colored = OscParams { eta: 0.5, phi: [0.0, 0.0, 1.0], ..base.clone() };
    let (_, h0) = assemble(&g, &c, &base).unwrap();
    let (_, h1) = assemble(&g, &c, &colored).unwrap();
    let e0 = spectrum(&h0, &g, &c, false).unwrap().eigenvalues;
    let e1 = spectrum(&h1, &g, &c, false).unwrap().eigenvalues;
    let shift = e0.iter().zip(&e1).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    assert!(shift > 1e-3, "{shift}");
    assert!(e1.iter().all(|v| v.is_finite()));
}
