//! The factorial-weighted norm `q_{m,s}(P) = Σ_r ((rs)!)^{-m} ||P^{(rs)}||_0`
//! with `||P||_0 = Σ_{l<s} |P^{(l)}(0)| / l!`.
//!
//! Writing `P = Σ c_i x^i` and `i = rs + l` with `0 <= l < s`, the term of
//! `c_i` is `|c_i| i! / (l! ((rs)!)^m)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{UniPoly, Univariate};
use crate::scalar::{factorial, ln_bigint, ln_factorial_table, ln_rational, parse_rational, rational_to_f64, ExactC};

/// A positive rational parameter that also accepts JSON numbers; decimal
/// literals are read exactly from their digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalParam(BigRational);

impl RationalParam {
    pub fn new(r: BigRational) -> Self {
        Self(r)
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn exact(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0)
    }
}

impl fmt::Display for RationalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for RationalParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match (self.0.is_integer(), self.0.numer().to_i64()) {
            (true, Some(n)) => s.serialize_i64(n),
            _ => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for RationalParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::String(s) => s.clone(),
            _ => return Err(serde::de::Error::custom("expected a number or a \"p/q\" string")),
        };
        parse_rational(&text)
            .map(RationalParam)
            .ok_or_else(|| serde::de::Error::custom(format!("`{text}` is not a rational number")))
    }
}

/// `ln q_{m,s}(p)` in floating point; `-inf` for the zero polynomial.
pub fn qms_ln_norm<P: Univariate>(p: &P, m: f64, s: u32) -> f64 {
    let coeffs = p.monomial_coeffs();
    qms_ln_from_coeffs(&coeffs.iter().map(|c| c.norm()).collect::<Vec<_>>(), m, s)
}

/// Same as [`qms_ln_norm`] from coefficient moduli `|c_i|`.
pub fn qms_ln_from_coeffs(abs_coeffs: &[f64], m: f64, s: u32) -> f64 {
    let s = s as usize;
    let lf = ln_factorial_table(abs_coeffs.len());
    let logs: Vec<f64> = abs_coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0.0)
        .map(|(i, c)| {
            let (r, l) = (i / s, i % s);
            c.ln() + lf[i] - lf[l] - m * lf[r * s]
        })
        .collect();
    log_sum_exp(&logs)
}

pub(crate) fn log_sum_exp(logs: &[f64]) -> f64 {
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln()
}

/// `q_{m,s}(p)` in floating point.
pub fn qms_norm<P: Univariate>(p: &P, m: f64, s: u32) -> Result<f64> {
    let v = qms_ln_norm(p, m, s).exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::PrecisionOverflow("q_{m,s} norm; use exact mode"))
    }
}

/// Exact value `Σ_k a_k · k^{1/d}` where `d` is the denominator of `m` and
/// each radicand `k` is free of `d`-th powers. Such radicals are linearly
/// independent over the rationals, so this form is canonical and equality
/// of values is equality of the maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmsExact {
    root: u64,
    terms: BTreeMap<BigInt, BigRational>,
}

fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if sieve[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
    }
    out
}

/// Exponent of the prime `p` in `n!`.
fn legendre_valuation(n: u64, p: u64) -> u64 {
    let mut v = 0;
    let mut q = p;
    while q <= n {
        v += n / q;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    v
}

impl QmsExact {
    pub fn zero(m: &BigRational) -> Self {
        let root = m.denom().to_u64().expect("exponent denominator fits in u64");
        Self { root, terms: BTreeMap::new() }
    }

    /// `c · (n!)^{-m}` in canonical form.
    pub fn factorial_power(c: BigRational, n: u64, m: &BigRational) -> Self {
        let mut out = Self::zero(m);
        if c.is_zero() {
            return out;
        }
        let p = m.numer().clone();
        let q = BigInt::from(out.root);
        // distinct primes, so the two products stay coprime without gcds
        let (mut num, mut den) = (BigInt::one(), BigInt::one());
        let mut radicand = BigInt::one();
        for prime in primes_up_to(n) {
            let v = BigInt::from(legendre_valuation(n, prime));
            // (prime^v)^{-p/q} = prime^f · prime^{r/q} with -p v = q f + r, 0 <= r < q
            let (f, r) = (-&p * v).div_mod_floor(&q);
            let fi = f.to_i64().expect("valuation fits in i64");
            let power = num_traits::pow(BigInt::from(prime), fi.unsigned_abs() as usize);
            if fi >= 0 {
                num *= power;
            } else {
                den *= power;
            }
            let ri = r.to_u32().expect("remainder below root");
            radicand *= num_traits::pow(BigInt::from(prime), ri as usize);
        }
        out.terms.insert(radicand, c * BigRational::new_raw(num, den));
        out
    }

    pub fn root(&self) -> u64 {
        self.root
    }

    pub fn terms(&self) -> &BTreeMap<BigInt, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_assign(&mut self, other: &QmsExact) {
        assert_eq!(self.root, other.root, "mixed exponent denominators");
        for (k, a) in &other.terms {
            let entry = self.terms.entry(k.clone()).or_insert_with(BigRational::zero);
            *entry += a;
            if entry.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    /// The value when it is rational.
    pub fn rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (k, a) = self.terms.iter().next()?;
                k.is_one().then(|| a.clone())
            }
            _ => None,
        }
    }

    /// Natural logarithm of the value; coefficients must be positive.
    pub fn ln(&self) -> f64 {
        let logs: Vec<f64> = self
            .terms
            .iter()
            .map(|(k, a)| ln_rational(&a.abs()) + ln_bigint(k) / self.root as f64)
            .collect();
        log_sum_exp(&logs)
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }
}

impl fmt::Display for QmsExact {
    /// `num/den` for rational values, otherwise `a*k^(1/d)` terms by radicand.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.rational() {
            return write!(f, "{}/{}", r.numer(), r.denom());
        }
        for (i, (k, a)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}/{}*{}^(1/{})", a.numer(), a.denom(), k, self.root)?;
        }
        Ok(())
    }
}

/// `|c|` when it is rational, i.e. `c` is real or purely imaginary.
fn exact_modulus(c: &ExactC) -> Result<BigRational> {
    if c.im.is_zero() {
        Ok(c.re.abs())
    } else if c.re.is_zero() {
        Ok(c.im.abs())
    } else {
        Err(Error::InexactMagnitude(format!("|{} + {}i| is not rational in general", c.re, c.im)))
    }
}

/// Exact `q_{m,s}(p)` for a rational exponent `m > 0`.
pub fn qms_norm_exact(p: &UniPoly<ExactC>, m: &BigRational, s: u32) -> Result<QmsExact> {
    if !m.is_positive() || s == 0 {
        return Err(Error::InvalidParameter("q_{m,s} needs m > 0 and s >= 1".into()));
    }
    let s = s as u64;
    let mut out = QmsExact::zero(m);
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.re.is_zero() && c.im.is_zero() {
            continue;
        }
        let i = i as u64;
        let (r, l) = (i / s, i % s);
        let weight = BigRational::new(factorial(i), factorial(l));
        let term = QmsExact::factorial_power(exact_modulus(c)? * weight, r * s, m);
        out.add_assign(&term);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C64;

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn constant_has_norm_one() {
        let one = UniPoly::<ExactC>::one();
        for m in [ratio(1, 2), ratio(1, 1), ratio(3, 1)] {
            assert_eq!(qms_norm_exact(&one, &m, 3).unwrap().rational(), Some(ratio(1, 1)));
        }
        let one_f = UniPoly::constant(C64::new(1.0, 0.0));
        assert!((qms_norm(&one_f, 1.7, 2).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn monomial_closed_form_integer_m() {
        // ||x^6||_{2,3} = (6!)^{-1}
        let p = UniPoly::<ExactC>::monomial(6, ExactC::one());
        assert_eq!(qms_norm_exact(&p, &ratio(2, 1), 3).unwrap().rational(), Some(ratio(1, 720)));
    }

    #[test]
    fn half_integer_m_is_canonical() {
        // (4!)^{1/2} = 2 · 6^{1/2}, so 1 · (4!)^{-1/2} = (1/12) 6^{1/2}
        let v = QmsExact::factorial_power(ratio(1, 1), 4, &ratio(1, 2));
        assert_eq!(v.terms().len(), 1);
        assert_eq!(v.terms().get(&BigInt::from(6)), Some(&ratio(1, 12)));
        assert!((v.to_f64() - 24f64.powf(-0.5)).abs() < 1e-15);
        let w = QmsExact::factorial_power(ratio(1, 1), 3, &ratio(1, 2));
        assert_eq!(w.terms().get(&BigInt::from(6)), Some(&ratio(1, 6)));
    }

    #[test]
    fn float_and_exact_agree() {
        let coeffs = [3i64, -1, 4, 1, -5, 9, 2];
        let exact = UniPoly::<ExactC>::from_integers(&coeffs);
        let float = exact.to_c64();
        for (m, mf) in [(ratio(1, 2), 0.5), (ratio(2, 1), 2.0)] {
            let e = qms_norm_exact(&exact, &m, 2).unwrap().to_f64();
            let f = qms_norm(&float, mf, 2).unwrap();
            assert!((e - f).abs() < 1e-13 * e);
        }
    }

    #[test]
    fn complex_moduli() {
        let p = UniPoly::new(vec![ExactC::new(ratio(1, 1), ratio(1, 1))]);
        assert!(matches!(qms_norm_exact(&p, &ratio(1, 1), 1), Err(Error::InexactMagnitude(_))));
        let p = UniPoly::new(vec![ExactC::new(ratio(0, 1), ratio(-3, 1))]);
        assert_eq!(qms_norm_exact(&p, &ratio(1, 1), 1).unwrap().rational(), Some(ratio(3, 1)));
    }

    #[test]
    fn overflow_is_reported() {
        let p = UniPoly::monomial(200, C64::new(1.0, 0.0));
        assert!(matches!(qms_norm(&p, 0.0001, 1), Err(Error::PrecisionOverflow(_))));
        assert!(qms_ln_norm(&p, 0.0001, 1).is_finite());
    }

    #[test]
    fn rational_param_json() {
        let a: RationalParam = serde_json::from_str("0.5").unwrap();
        let b: RationalParam = serde_json::from_str("\"1/2\"").unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), "\"1/2\"");
        let c: RationalParam = serde_json::from_str("2").unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), "2");
    }
}
