use markov_lab::polycore::families::{random_multi_exact, rng};
use markov_lab::polycore::{di_residual, di_sides, dir_derivative, ChebPoly, DirOp, MultiPoly, UniPoly, Univariate};
use markov_lab::scalar::{exact_real, ExactC, C64};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn uni(c: &[f64]) -> UniPoly<C64> {
    UniPoly::new(c.iter().map(|&x| C64::new(x, 0.0)).collect())
}

fn rational(n: i64, d: i64) -> ExactC {
    exact_real(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

#[test]
fn identity_on_a_hand_example() {
    // f = x y, D = ∂x + ∂y, k = 2: both sides are 2! (Df)² = 2 (x + y)²
    let f = MultiPoly::from_terms(2, [(vec![1, 1], rational(1, 1))]).unwrap();
    let d = DirOp::new(vec![rational(1, 1), rational(1, 1)]).unwrap();
    let (lhs, rhs) = di_sides(&f, &d, 2).unwrap();
    let expected = MultiPoly::from_terms(
        2,
        [(vec![2, 0], rational(2, 1)), (vec![1, 1], rational(4, 1)), (vec![0, 2], rational(2, 1))],
    )
    .unwrap();
    assert_eq!(lhs, expected);
    assert_eq!(rhs, expected);
}

#[test]
fn exact_identity_is_exact_on_seeded_inputs() {
    for seed in 0..20 {
        let mut r = rng(seed);
        let f = random_multi_exact(&mut r, 2, 4);
        let d = DirOp::new(vec![rational(2, 3), rational(-1, 2)]).unwrap();
        for k in 1..=3 {
            assert_eq!(di_residual(&f, &d, k).unwrap(), 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The monomial basis is ill-conditioned, so degrees stay moderate.
    #[test]
    fn chebyshev_monomial_round_trip(c in prop::collection::vec(-1.0..1.0f64, 1..16)) {
        let p = ChebPoly::from_real(&c);
        let back = ChebPoly::from_monomial(&p.to_monomial());
        for (a, b) in p.coeffs().iter().zip(back.coeffs()) {
            prop_assert!((a - b).norm() < 1e-9);
        }
    }

    #[test]
    fn leibniz_rule(a in prop::collection::vec(-2.0..2.0f64, 1..10), b in prop::collection::vec(-2.0..2.0f64, 1..10)) {
        let (p, q) = (uni(&a), uni(&b));
        let lhs = (&p * &q).derivative(1);
        let rhs = &(&p.derivative(1) * &q) + &(&p * &q.derivative(1));
        prop_assert!((&lhs - &rhs).max_coeff_magnitude() < 1e-10);
    }

    #[test]
    fn derivative_agrees_across_bases(c in prop::collection::vec(-1.0..1.0f64, 1..20), k in 0usize..4, x in -1.0..1.0f64) {
        let p = ChebPoly::from_real(&c);
        let m = p.to_monomial();
        let a = p.derivative(k).eval_real(x);
        let b = m.derivative(k).eval(&C64::new(x, 0.0));
        prop_assert!((a - b).norm() <= 1e-8 * (1.0 + b.norm()));
    }

    #[test]
    fn directional_derivative_is_a_sum_of_partials(seed in any::<u64>(), v0 in -3i64..=3, v1 in -3i64..=3) {
        prop_assume!(v0 != 0 || v1 != 0);
        let mut r = rng(seed);
        let f = random_multi_exact(&mut r, 2, 5);
        let d = DirOp::new(vec![rational(v0, 1), rational(v1, 2)]).unwrap();
        let by_partials = &f.partial(0, 1).unwrap().scale(&rational(v0, 1)) + &f.partial(1, 1).unwrap().scale(&rational(v1, 2));
        prop_assert_eq!(dir_derivative(&f, &d, 1).unwrap(), by_partials);
    }

    #[test]
    fn mixed_partials_commute(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_multi_exact(&mut r, 2, 6);
        let xy = f.partial(0, 1).unwrap().partial(1, 2).unwrap();
        let yx = f.partial(1, 2).unwrap().partial(0, 1).unwrap();
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn power_degree_and_product(seed in any::<u64>(), s in 0u32..4) {
        let mut r = rng(seed);
        let f = random_multi_exact(&mut r, 2, 3);
        let p = f.power(s).unwrap();
        let mut by_hand = MultiPoly::one(2);
        for _ in 0..s {
            by_hand = &by_hand * &f;
        }
        prop_assert_eq!(&p, &by_hand);
        if let Some(d) = f.total_degree() {
            prop_assert_eq!(p.total_degree(), Some(d * s as usize));
        }
    }
}
