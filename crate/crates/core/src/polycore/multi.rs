use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polycore::UniPoly;
use crate::scalar::{Scalar, C64};

/// Exponent vector of a monomial.
pub type MultiIndex = Vec<u32>;

/// Caps applied to user-supplied multivariate polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyLimits {
    pub max_vars: usize,
    pub max_degree: usize,
}

impl Default for PolyLimits {
    fn default() -> Self {
        Self { max_vars: 4, max_degree: 32 }
    }
}

/// Sparse multivariate polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<T = C64> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, T>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "a multivariate polynomial needs at least one variable");
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, T::one())
    }

    /// The coordinate function `x_j` (0-based axis).
    pub fn var(nvars: usize, j: usize) -> Self {
        let mut alpha = vec![0; nvars];
        alpha[j] = 1;
        Self::monomial(alpha, T::one())
    }

    pub fn monomial(alpha: MultiIndex, c: T) -> Self {
        let mut p = Self::zero(alpha.len());
        p.add_term(alpha, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, T)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (alpha, c) in terms {
            if alpha.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: alpha.len() });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Rejects polynomials outside `limits`.
    pub fn check_limits(&self, limits: &PolyLimits) -> Result<()> {
        if self.nvars > limits.max_vars {
            return Err(Error::LimitExceeded(format!(
                "{} variables, cap is {}",
                self.nvars, limits.max_vars
            )));
        }
        if let Some(d) = self.total_degree() {
            if d > limits.max_degree {
                return Err(Error::LimitExceeded(format!(
                    "total degree {d}, cap is {}",
                    limits.max_degree
                )));
            }
        }
        Ok(())
    }

    fn add_term(&mut self, alpha: MultiIndex, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&alpha) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&alpha);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(alpha, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &[u32]) -> T {
        self.terms.get(alpha).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|a| a.iter().sum::<u32>() as usize).max()
    }

    /// Homogeneous of some degree, zero polynomial excluded.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|a| a.iter().sum::<u32>() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn eval(&self, x: &[T]) -> Result<T> {
        if x.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: x.len() });
        }
        let mut acc = T::zero();
        for (alpha, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &e) in x.iter().zip(alpha) {
                for _ in 0..e {
                    term = term * xi.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.nvars);
        for (alpha, a) in &self.terms {
            out.add_term(alpha.clone(), a.clone() * c.clone());
        }
        out
    }

    /// `∂^k / ∂x_j^k`.
    pub fn partial(&self, j: usize, k: u32) -> Result<Self> {
        if j >= self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: j + 1 });
        }
        let mut out = Self::zero(self.nvars);
        for (alpha, c) in &self.terms {
            let e = alpha[j];
            if e < k {
                continue;
            }
            let falling = ((e - k + 1)..=e).fold(T::one(), |acc, i| acc * T::from_i64(i as i64));
            let mut beta = alpha.clone();
            beta[j] = e - k;
            out.add_term(beta, falling * c.clone());
        }
        Ok(out)
    }

    /// `D^α = ∂^{α_1}_1 ⋯ ∂^{α_N}_N`.
    pub fn partial_multi(&self, alpha: &[u32]) -> Result<Self> {
        if alpha.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: alpha.len() });
        }
        let mut out = self.clone();
        for (j, &a) in alpha.iter().enumerate() {
            if a > 0 {
                out = out.partial(j, a)?;
            }
        }
        Ok(out)
    }

    /// Repeated squaring.
    pub fn power(&self, s: u32) -> Result<Self> {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = s;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        if result.terms.values().all(Scalar::is_finite) {
            Ok(result)
        } else {
            Err(Error::PrecisionOverflow("multivariate power"))
        }
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.terms.values().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn from_uni(p: &UniPoly<T>) -> Self {
        let mut out = Self::zero(1);
        for (j, c) in p.coeffs().iter().enumerate() {
            out.add_term(vec![j as u32], c.clone());
        }
        out
    }

    pub fn to_uni(&self) -> Result<UniPoly<T>> {
        if self.nvars != 1 {
            return Err(Error::DimensionMismatch { expected: 1, got: self.nvars });
        }
        let deg = self.total_degree().unwrap_or(0);
        let mut coeffs = vec![T::zero(); deg + 1];
        for (alpha, c) in &self.terms {
            coeffs[alpha[0] as usize] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn to_c64(&self) -> MultiPoly<C64> {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), c.to_c64())).collect(),
        }
    }
}

impl MultiPoly<C64> {
    /// Values on the tensor grid `xs × ys` of a bivariate polynomial,
    /// stored row-major with `ys` as the slow index.
    pub fn eval_grid_2d(&self, xs: &[f64], ys: &[f64]) -> Result<Vec<C64>> {
        if self.nvars != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: self.nvars });
        }
        let dx = self.terms.keys().map(|a| a[0] as usize).max().unwrap_or(0);
        let dy = self.terms.keys().map(|a| a[1] as usize).max().unwrap_or(0);
        // dense[b][a] multiplies x^a y^b
        let mut dense = vec![vec![C64::zero(); dx + 1]; dy + 1];
        for (alpha, c) in &self.terms {
            dense[alpha[1] as usize][alpha[0] as usize] = *c;
        }
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        let mut row = vec![C64::zero(); dx + 1];
        for &y in ys {
            // coefficients in x for this fixed y
            for (a, r) in row.iter_mut().enumerate() {
                *r = (0..=dy).rev().fold(C64::zero(), |acc, b| acc * y + dense[b][a]);
            }
            for &x in xs {
                out.push(row.iter().rev().fold(C64::zero(), |acc, c| acc * x + c));
            }
        }
        Ok(out)
    }

    /// Real point evaluation.
    pub fn eval_real(&self, x: &[f64]) -> C64 {
        let mut acc = C64::zero();
        for (alpha, c) in &self.terms {
            let mut term = *c;
            for (xi, &e) in x.iter().zip(alpha) {
                term *= xi.powi(e as i32);
            }
            acc += term;
        }
        acc
    }
}

impl<T: Scalar> Add for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn add(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (alpha, c) in &rhs.terms {
            out.add_term(alpha.clone(), c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn sub(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (alpha, c) in &rhs.terms {
            out.add_term(alpha.clone(), -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &MultiPoly<T> {
    type Output = MultiPoly<T>;

    fn mul(self, rhs: Self) -> MultiPoly<T> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let alpha: MultiIndex = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(alpha, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Debug for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}](", self.nvars)?;
        for (i, (alpha, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c:?}){alpha:?}")?;
        }
        write!(f, ")")
    }
}
