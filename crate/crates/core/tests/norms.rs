use markov_lab::norms::{lp_norm, qms_norm, qms_norm_exact, sup_uni, CompactSet, Measure, NormSpec, RationalParam};
use markov_lab::polycore::{ChebPoly, UniPoly, Univariate};
use markov_lab::scalar::{exact_real, parse_rational, rational_to_f64, C64};
use num_rational::BigRational;
use proptest::prelude::*;

const GOLDEN: &str = include_str!("data/qms_golden.csv");

/// Rows generated by `data/gen_qms.py` from the defining series.
#[test]
fn qms_golden_file() {
    let mut rows = 0;
    for line in GOLDEN.lines().filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split(',').collect();
        let m = parse_rational(f[1]).unwrap();
        let s: u32 = f[2].parse().unwrap();
        let coeffs = f[3].split(' ').map(|c| exact_real(parse_rational(c).unwrap())).collect();
        let p = UniPoly::new(coeffs);
        let expected = parse_rational(f[4]).unwrap();
        let got = qms_norm_exact(&p, &m, s).unwrap();
        if f[0] == "value" {
            assert_eq!(got.rational(), Some(expected.clone()), "{line}");
        } else {
            // a single radical term a·k^{1/q}, so the q-th power is a^q·k
            let q = m.denom().clone();
            assert_eq!(got.root().to_string(), q.to_string(), "{line}");
            let terms: Vec<_> = got.terms().iter().collect();
            assert_eq!(terms.len(), 1, "{line}");
            let (k, a) = terms[0];
            let qu = got.root() as usize;
            let power = num_traits::pow(a.clone(), qu) * BigRational::from_integer(k.clone());
            assert_eq!(power, expected, "{line}");
        }
        let float = qms_norm(&p.to_c64(), rational_to_f64(&m), s).unwrap();
        let want = got.to_f64();
        assert!((float - want).abs() <= 1e-12 * want, "{line}: {float} vs {want}");
        rows += 1;
    }
    assert_eq!(rows, 93);
}

#[test]
fn qms_spec_variant_matches_function() {
    let q = NormSpec::Qms { m: RationalParam::from_ratio(1, 2), s: 3 };
    let p = ChebPoly::chebyshev_t(7);
    let direct = qms_norm(&p, 0.5, 3).unwrap();
    assert!((q.eval(&p).unwrap() - direct).abs() < 1e-12 * direct);
}

fn coeffs(max_degree: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, 1..=max_degree + 1)
}

fn dense_max(p: &ChebPoly, samples: usize) -> f64 {
    (0..=samples)
        .map(|i| p.eval_real(-1.0 + 2.0 * i as f64 / samples as f64).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The refined sup bounds every sample from above and is attained to
    /// within what a dense grid can resolve.
    #[test]
    fn sup_against_dense_sampling(c in coeffs(24)) {
        let p = ChebPoly::from_real(&c);
        let sup = sup_uni(&p, &CompactSet::unit_interval()).unwrap();
        let dense = dense_max(&p, 20_000);
        prop_assert!(sup >= dense * (1.0 - 1e-12));
        // between samples |p| can exceed the grid by at most h²/8 · max|p''|
        let h = 2.0 / 20_000.0;
        let curvature = dense_max(&p.derivative(2), 4000) * 1.01;
        prop_assert!(sup <= dense + h * h / 8.0 * curvature + 1e-12);
    }

    #[test]
    fn norms_are_absolutely_homogeneous(c in coeffs(12), re in -3.0..3.0f64, im in -3.0..3.0f64) {
        let p = ChebPoly::from_real(&c);
        let lambda = C64::new(re, im);
        let specs = [
            NormSpec::sup_unit(),
            NormSpec::Lp { measure: Measure::lebesgue(32), s: 3.0 },
            NormSpec::Schur { alpha: 0.5, set: None },
            NormSpec::Qms { m: RationalParam::from_ratio(1, 1), s: 2 },
        ];
        for q in &specs {
            let a = q.eval(&p.scale(lambda)).unwrap();
            let b = lambda.norm() * q.eval(&p).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * b.max(1e-300), "{}: {a} vs {b}", q.name());
        }
    }

    #[test]
    fn triangle_inequality(a in coeffs(10), b in coeffs(10)) {
        let (p, r) = (ChebPoly::from_real(&a), ChebPoly::from_real(&b));
        let sum = p.add(&r);
        for q in [NormSpec::sup_unit(), NormSpec::Lp { measure: Measure::lebesgue(32), s: 1.5 }] {
            let lhs = q.eval(&sum).unwrap();
            let rhs = q.eval(&p).unwrap() + q.eval(&r).unwrap();
            prop_assert!(lhs <= rhs * (1.0 + 1e-10) + 1e-14);
        }
    }

    /// On a probability measure `L^s` norms increase with `s` and stay below the sup.
    #[test]
    fn lp_monotone_in_exponent(c in coeffs(16)) {
        let p = ChebPoly::from_real(&c);
        let mu = Measure::jacobi(0.5, -0.5, 64).unwrap();
        let mut last = 0.0;
        for s in [1.0, 1.5, 2.0, 4.0, 8.0] {
            let v = lp_norm(&p, &mu, s).unwrap();
            prop_assert!(v >= last * (1.0 - 1e-10));
            last = v;
        }
        prop_assert!(last <= sup_uni(&p, &CompactSet::unit_interval()).unwrap() * (1.0 + 1e-10));
    }
}
