use markov_lab::norms::{Interval, Measure, Weight};
use markov_lab::orthopoly::{jacobi_system, stieltjes_orthonormalize, OrthoSystem};
use markov_lab::polycore::{ChebPoly, Univariate};
use markov_lab::scalar::C64;
use proptest::prelude::*;

#[test]
fn legendre_recurrence_closed_form() {
    let sys = jacobi_system(0.0, 0.0, 40).unwrap();
    for n in 1..=40 {
        let nf = n as f64;
        assert!((sys.b()[n] - nf / (4.0 * nf * nf - 1.0).sqrt()).abs() < 1e-14, "n = {n}");
        assert!(sys.a()[n - 1].abs() < 1e-15);
    }
}

#[test]
fn chebyshev_recurrence_closed_form() {
    let sys = jacobi_system(-0.5, -0.5, 20).unwrap();
    assert!((sys.b()[1] - 0.5f64.sqrt()).abs() < 1e-14);
    for n in 2..=20 {
        assert!((sys.b()[n] - 0.5).abs() < 1e-14);
    }
    // orthonormal Chebyshev members are √2 T_n
    for &x in &[-0.7, 0.1, 0.95] {
        let t7 = ChebPoly::chebyshev_t(7).eval_real(x).re;
        assert!((sys.eval(7, x).unwrap() - 2f64.sqrt() * t7).abs() < 1e-12);
    }
}

#[test]
fn tabulated_weight_reproduces_jacobi() {
    let samples = 4 * 2048 + 1;
    let values: Vec<f64> = (0..samples)
        .map(|i| {
            let t = -1.0 + 2.0 * i as f64 / (samples - 1) as f64;
            (1.0 - t) * (1.0 + t)
        })
        .collect();
    let mu = Measure::new(Interval::unit(), Weight::Tabulated(values), 24).unwrap();
    let tab = stieltjes_orthonormalize(&mu, 12).unwrap();
    let exact = jacobi_system(1.0, 1.0, 12).unwrap();
    for n in 0..=12 {
        assert!((tab.a()[n] - exact.a()[n]).abs() < 1e-6, "a_{n}");
        assert!((tab.b()[n] - exact.b()[n]).abs() < 1e-6, "b_{n}");
    }
}

#[test]
fn budget_and_degree_errors() {
    assert!(stieltjes_orthonormalize(&Measure::lebesgue(8), 16).is_err());
    let sys = jacobi_system(0.0, 0.0, 4).unwrap();
    assert!(sys.expand(&ChebPoly::chebyshev_t(5)).is_err());
}

fn max_off_identity(g: &[Vec<f64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gram_is_identity(alpha in -0.9..3.0f64, beta in -0.9..3.0f64, n in 1usize..48) {
        let sys = jacobi_system(alpha, beta, n).unwrap();
        prop_assert!(max_off_identity(&sys.gram(n).unwrap()) < 1e-10);
    }

    #[test]
    fn symmetric_weights_have_zero_diagonal(alpha in -0.9..3.0f64) {
        let sys = jacobi_system(alpha, alpha, 24).unwrap();
        prop_assert!(sys.a().iter().all(|a| a.abs() < 1e-14));
        // parity: P_n(-x) = (-1)^n P_n(x)
        let x = 0.37;
        for n in 0..=24 {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((sys.eval(n, -x).unwrap() - sign * sys.eval(n, x).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn expand_then_reconstruct(c in prop::collection::vec(-1.0..1.0f64, 1..20), alpha in -0.5..1.5f64, beta in -0.5..1.5f64) {
        let sys = jacobi_system(alpha, beta, 24).unwrap();
        let p = ChebPoly::from_real(&c);
        let coeffs = sys.expand(&p).unwrap();
        let back = sys.reconstruct(&coeffs).unwrap();
        for &x in &[-1.0, -0.3, 0.2, 0.9] {
            prop_assert!((back.eval_real(x) - p.eval_real(x)).norm() < 1e-10);
        }
        // Parseval against the measure
        let mu = Measure::jacobi(alpha, beta, 48).unwrap();
        let l2 = mu.integrate(|x| p.eval_real(x).norm_sqr());
        let sum: f64 = coeffs.iter().map(C64::norm_sqr).sum();
        prop_assert!((l2 - sum).abs() < 1e-10 * l2.max(1.0));
    }

    #[test]
    fn from_measure_follows_the_support(lo in -3.0..0.0f64, width in 0.5..4.0f64) {
        let support = Interval::new(lo, lo + width).unwrap();
        let mu = Measure::new(support, Weight::Lebesgue, 24).unwrap();
        let sys = OrthoSystem::from_measure(&mu, 10).unwrap();
        prop_assert!(max_off_identity(&sys.gram(10).unwrap()) < 1e-10);
        prop_assert!((sys.a()[0] - (lo + width / 2.0)).abs() < 1e-12);
    }
}
