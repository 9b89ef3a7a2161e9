//! Named polynomial families and seeded random polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::polycore::{ChebPoly, MultiIndex, MultiPoly, UniPoly};
use crate::scalar::{exact_real, ExactC, Scalar, C64};

/// A polynomial named by family and degree, e.g. `chebyshev:8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    ChebyshevT,
    ChebyshevU,
    /// Normalized in `L²(dx/2)`.
    Legendre,
    Monomial,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ChebyshevT => "chebyshev",
            Family::ChebyshevU => "chebyshev_u",
            Family::Legendre => "legendre",
            Family::Monomial => "monomial",
        }
    }

    pub fn member(self, n: usize) -> ChebPoly {
        match self {
            Family::ChebyshevT => ChebPoly::chebyshev_t(n),
            Family::ChebyshevU => ChebPoly::chebyshev_u(n),
            Family::Legendre => ChebPoly::legendre_normalized(n),
            Family::Monomial => ChebPoly::monomial(n),
        }
    }

    /// Exact monomial-basis form. Legendre members are returned with
    /// `P_n(1) = 1`, the normalized version being irrational.
    pub fn exact_member(self, n: usize) -> UniPoly<ExactC> {
        match self {
            Family::ChebyshevT => chebyshev_t_exact(n),
            Family::ChebyshevU => chebyshev_u_exact(n),
            Family::Legendre => legendre_exact(n),
            Family::Monomial => UniPoly::monomial(n, ExactC::one()),
        }
    }
}

/// Parses `family:n`.
pub fn parse_named(s: &str) -> Option<(Family, usize)> {
    let (name, n) = s.split_once(':')?;
    let n: usize = n.trim().parse().ok()?;
    let family = match name.trim() {
        "chebyshev" | "chebyshev_t" => Family::ChebyshevT,
        "chebyshev_u" => Family::ChebyshevU,
        "legendre" => Family::Legendre,
        "monomial" => Family::Monomial,
        _ => return None,
    };
    Some((family, n))
}

fn three_term_exact(n: usize, first: UniPoly<ExactC>) -> UniPoly<ExactC> {
    let x2 = UniPoly::monomial(1, ExactC::from_i64(2));
    let mut prev = UniPoly::one();
    let mut cur = first;
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&x2 * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

pub fn chebyshev_t_exact(n: usize) -> UniPoly<ExactC> {
    three_term_exact(n, UniPoly::x())
}

pub fn chebyshev_u_exact(n: usize) -> UniPoly<ExactC> {
    three_term_exact(n, UniPoly::monomial(1, ExactC::from_i64(2)))
}

/// `P_n` with `P_n(1) = 1`, rational coefficients.
pub fn legendre_exact(n: usize) -> UniPoly<ExactC> {
    let mut prev = UniPoly::zero();
    let mut cur = UniPoly::one();
    for j in 0..n {
        let a = exact_real(BigRational::new(BigInt::from(2 * j + 1), BigInt::from(j + 1)));
        let b = exact_real(BigRational::new(BigInt::from(j), BigInt::from(j + 1)));
        let next = &(&UniPoly::x() * &cur).scale(&a) - &prev.scale(&b);
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_a(x_1) T_b(x_2) ⋯` as a multivariate polynomial.
pub fn product_chebyshev(degrees: &[usize]) -> MultiPoly<C64> {
    let nvars = degrees.len();
    let mut out = MultiPoly::one(nvars);
    for (axis, &d) in degrees.iter().enumerate() {
        let t = chebyshev_t_exact(d).to_c64();
        let mut factor = MultiPoly::zero(nvars);
        for (j, c) in t.coeffs().iter().enumerate() {
            let mut alpha = vec![0; nvars];
            alpha[axis] = j as u32;
            factor = &factor + &MultiPoly::monomial(alpha, *c);
        }
        out = &out * &factor;
    }
    out
}

/// Mixes a base seed with row coordinates (splitmix64 finalizer).
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mut z = base ^ 0x9E37_79B9_7F4A_7C15;
    for &p in parts {
        z = z.wrapping_add(p.wrapping_mul(0xBF58_476D_1CE4_E5B9)).wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
    }
    z
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian vector of length `len` scaled to unit Euclidean norm.
pub fn random_unit_vector(rng: &mut impl Rng, len: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Random polynomial of exact degree `n` with Gaussian Chebyshev coefficients.
pub fn random_cheb(rng: &mut impl Rng, n: usize) -> ChebPoly {
    let mut c = random_unit_vector(rng, n + 1);
    if c[n].abs() < 1e-3 {
        c[n] = 1e-3_f64.copysign(c[n]);
    }
    ChebPoly::from_real(&c)
}

fn multi_indices(nvars: usize, max_degree: usize) -> Vec<MultiIndex> {
    fn rec(nvars: usize, budget: usize, prefix: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if prefix.len() == nvars {
            out.push(prefix.clone());
            return;
        }
        for e in 0..=budget {
            prefix.push(e as u32);
            rec(nvars, budget - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, max_degree, &mut Vec::new(), &mut out);
    out
}

/// All exponent vectors with `|α| <= max_degree`.
pub fn all_multi_indices(nvars: usize, max_degree: usize) -> Vec<MultiIndex> {
    multi_indices(nvars, max_degree)
}

/// Dense random polynomial with complex Gaussian coefficients.
pub fn random_multi(rng: &mut impl Rng, nvars: usize, max_degree: usize) -> MultiPoly<C64> {
    let terms = multi_indices(nvars, max_degree).into_iter().map(|alpha| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        (alpha, C64::new(re, im))
    });
    MultiPoly::from_terms(nvars, terms).expect("indices have matching length")
}

/// Random polynomial with small Gaussian-rational coefficients.
pub fn random_multi_exact(rng: &mut impl Rng, nvars: usize, max_degree: usize) -> MultiPoly<ExactC> {
    let small = |rng: &mut dyn rand::RngCore| {
        let num: i64 = rng.random_range(-4..=4);
        let den: i64 = rng.random_range(1..=3);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    };
    let terms: Vec<_> = multi_indices(nvars, max_degree)
        .into_iter()
        .map(|alpha| {
            let re = small(rng);
            let im = if rng.random_bool(0.5) { small(rng) } else { BigRational::zero() };
            (alpha, ExactC::new(re, im))
        })
        .collect();
    MultiPoly::from_terms(nvars, terms).expect("indices have matching length")
}

/// Parses a descriptor such as `chebyshev:8` into its Chebyshev-basis form.
pub fn named(s: &str) -> Result<ChebPoly> {
    let (family, n) = parse_named(s).ok_or_else(|| Error::InvalidParameter(format!("unknown polynomial family `{s}`")))?;
    Ok(family.member(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Univariate;

    #[test]
    fn exact_chebyshev_matches_float() {
        let t = chebyshev_t_exact(3);
        assert_eq!(t, UniPoly::from_integers(&[0, -3, 0, 4]));
        let t8 = chebyshev_t_exact(8).to_c64();
        let c8 = ChebPoly::chebyshev_t(8);
        for &x in &[-0.9, 0.3, 1.0] {
            assert!((t8.eval(&C64::new(x, 0.0)) - c8.eval_real(x)).norm() < 1e-12);
        }
    }

    #[test]
    fn exact_legendre_value_at_one() {
        let p = legendre_exact(7).to_c64();
        assert!((p.eval(&C64::new(1.0, 0.0)) - C64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn named_parse() {
        assert_eq!(parse_named("chebyshev:8"), Some((Family::ChebyshevT, 8)));
        assert_eq!(parse_named("legendre:3"), Some((Family::Legendre, 3)));
        assert_eq!(parse_named("bogus:3"), None);
        assert!(named("chebyshev:x").is_err());
    }

    #[test]
    fn product_chebyshev_evaluates_as_product() {
        let p = product_chebyshev(&[3, 2]);
        let x = [0.3, -0.7];
        let expected = (3.0 * f64::acos(0.3)).cos() * (2.0 * f64::acos(-0.7)).cos();
        assert!((p.eval_real(&x).re - expected).abs() < 1e-13);
        assert_eq!(p.total_degree(), Some(5));
    }

    #[test]
    fn seeds_are_deterministic() {
        let a = random_unit_vector(&mut rng(derive_seed(7, &[1, 2])), 5);
        let b = random_unit_vector(&mut rng(derive_seed(7, &[1, 2])), 5);
        let c = random_unit_vector(&mut rng(derive_seed(7, &[2, 1])), 5);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
