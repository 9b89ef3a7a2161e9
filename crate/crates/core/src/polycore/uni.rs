use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};

/// Univariate polynomial in the monomial basis, `coeffs[j]` multiplies `x^j`.
///
/// The coefficient vector is always trimmed: the leading coefficient is
/// nonzero, and the zero polynomial stores no coefficients at all.
#[derive(Clone, PartialEq)]
pub struct UniPoly<T = C64> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, T::one())
    }

    /// `c * x^n`.
    pub fn monomial(n: usize, c: T) -> Self {
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> T {
        self.coeffs.get(j).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nested multiplication.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// The `k`-fold derivative.
    pub fn derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Self::zero();
        }
        let coeffs = (k..self.coeffs.len())
            .map(|j| {
                // j (j-1) ... (j-k+1)
                let falling = ((j - k + 1)..=j).fold(T::one(), |acc, i| acc * T::from_i64(i as i64));
                falling * self.coeffs[j].clone()
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Repeated squaring; floating coefficients that overflow are reported.
    pub fn power(&self, s: u32) -> Result<Self> {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = s;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
                result.check_finite()?;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
                base.check_finite()?;
            }
        }
        Ok(result)
    }

    fn check_finite(&self) -> Result<()> {
        if self.coeffs.iter().all(Scalar::is_finite) {
            Ok(())
        } else {
            Err(Error::PrecisionOverflow("polynomial power"))
        }
    }

    /// Largest coefficient modulus.
    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn to_c64(&self) -> UniPoly<C64> {
        UniPoly::new(self.coeffs.iter().map(Scalar::to_c64).collect())
    }
}

impl<T: Scalar> Add for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn add(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|j| self.coeff(j) + rhs.coeff(j)).collect())
    }
}

impl<T: Scalar> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn sub(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|j| self.coeff(j) - rhs.coeff(j)).collect())
    }
}

impl<T: Scalar> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn mul(self, rhs: Self) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<T: Scalar> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;

    fn neg(self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "UniPoly(0)");
        }
        write!(f, "UniPoly(")?;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})x^{j}")?;
        }
        write!(f, ")")
    }
}
