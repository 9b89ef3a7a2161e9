//! Coefficient backends: double precision complex and exact rational complex.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Double precision complex scalar.
pub type C64 = Complex<f64>;

/// Exact complex scalar with rational real and imaginary parts.
pub type ExactC = Complex<BigRational>;

/// Ring operations shared by both coefficient backends.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Whether arithmetic in this backend is exact.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    fn from_bigint(n: &BigInt) -> Self;

    /// Approximate modulus, used for residuals and diagnostics.
    fn magnitude(&self) -> f64;

    fn to_c64(&self) -> C64;

    fn is_finite(&self) -> bool;
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }

    fn from_bigint(n: &BigInt) -> Self {
        C64::new(n.to_f64().unwrap_or(f64::INFINITY), 0.0)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Scalar for ExactC {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_bigint(n: &BigInt) -> Self {
        Complex::new(BigRational::from_integer(n.clone()), BigRational::zero())
    }

    fn magnitude(&self) -> f64 {
        let c = self.to_c64();
        c.norm()
    }

    fn to_c64(&self) -> C64 {
        C64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn is_finite(&self) -> bool {
        true
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational complex from a real rational.
pub fn exact_real(r: BigRational) -> ExactC {
    Complex::new(r, BigRational::zero())
}

/// Exact rational complex from a float; every finite double is a dyadic rational.
pub fn exact_from_f64(x: f64) -> Option<ExactC> {
    BigRational::from_float(x).map(exact_real)
}

/// Natural logarithm of a positive big integer, accurate to double precision.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map(f64::ln).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().map(f64::ln).unwrap_or(f64::NAN) + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational.
pub fn ln_rational(r: &BigRational) -> f64 {
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

/// `ln(n!)` by direct summation; exact enough for log-domain weights.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Table of `ln(i!)` for `i = 0..=n`.
pub fn ln_factorial_table(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..=n {
        acc += (i as f64).ln();
        out.push(acc);
    }
    out
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Smallest integer greater than or equal to `r`.
pub fn ceil_rational(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

/// Parses `"p/q"`, `"p"` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Ok(n) = s.parse::<BigInt>() {
        return Some(BigRational::from_integer(n));
    }
    // decimal literal, read exactly from its digits
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.')?;
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(digits, den);
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_bigint_matches_float_for_large_values() {
        let f = factorial(300);
        let expected = ln_factorial(300);
        assert!((ln_bigint(&f) - expected).abs() < 1e-10 * expected);
    }

    #[test]
    fn ceil_is_exact() {
        let r = BigRational::new(BigInt::from(4), BigInt::from(3));
        assert_eq!(ceil_rational(&r), BigInt::from(2));
        let r = BigRational::new(BigInt::from(6), BigInt::from(3));
        assert_eq!(ceil_rational(&r), BigInt::from(2));
        let r = BigRational::new(BigInt::from(-1), BigInt::from(2));
        assert_eq!(ceil_rational(&r), BigInt::from(0));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("1/2"), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("3"), Some(BigRational::from_integer(3.into())));
        assert_eq!(parse_rational("-0.25"), Some(BigRational::new((-1).into(), 4.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
