use num_traits::Zero;

use crate::polycore::UniPoly;
use crate::scalar::C64;

/// Floating univariate polynomials that can be evaluated, differentiated and
/// multiplied. Norm evaluators are written against this trait so the
/// numerically appropriate basis can be chosen per set.
pub trait Univariate: Clone + Send + Sync {
    /// `None` for the zero polynomial.
    fn degree(&self) -> Option<usize>;

    fn eval(&self, z: C64) -> C64;

    fn eval_real(&self, x: f64) -> C64 {
        self.eval(C64::new(x, 0.0))
    }

    fn derivative(&self, k: usize) -> Self;

    fn mul(&self, other: &Self) -> Self;

    fn add(&self, other: &Self) -> Self;

    fn scale(&self, c: C64) -> Self;

    /// Coefficients in the monomial basis, i.e. Taylor coefficients at 0.
    fn monomial_coeffs(&self) -> Vec<C64>;

    fn one() -> Self;

    fn power(&self, s: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..s {
            out = out.mul(self);
        }
        out
    }
}

impl Univariate for UniPoly<C64> {
    fn degree(&self) -> Option<usize> {
        UniPoly::degree(self)
    }

    fn eval(&self, z: C64) -> C64 {
        UniPoly::eval(self, &z)
    }

    fn derivative(&self, k: usize) -> Self {
        UniPoly::derivative(self, k)
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn scale(&self, c: C64) -> Self {
        UniPoly::scale(self, &c)
    }

    fn monomial_coeffs(&self) -> Vec<C64> {
        self.coeffs().to_vec()
    }

    fn one() -> Self {
        UniPoly::one()
    }
}

/// Polynomial in the Chebyshev basis `T_0, T_1, …` of `[-1, 1]`.
///
/// High-degree polynomials that are moderate on the interval have huge,
/// cancelling monomial coefficients; this basis keeps evaluation and
/// differentiation stable there.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebPoly {
    coeffs: Vec<C64>,
}

impl ChebPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| C64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// `T_n`.
    pub fn chebyshev_t(n: usize) -> Self {
        let mut c = vec![C64::zero(); n + 1];
        c[n] = C64::new(1.0, 0.0);
        Self::new(c)
    }

    /// Chebyshev polynomial of the second kind `U_n`.
    pub fn chebyshev_u(n: usize) -> Self {
        let mut c = vec![C64::zero(); n + 1];
        for j in (n % 2..=n).step_by(2) {
            c[j] = C64::new(if j == 0 { 1.0 } else { 2.0 }, 0.0);
        }
        Self::new(c)
    }

    /// Legendre polynomial with `P_n(1) = 1`.
    pub fn legendre(n: usize) -> Self {
        let mut prev = Self::zero();
        let mut cur = Self::chebyshev_t(0);
        for j in 0..n {
            let next = cur
                .mul_x()
                .scale_real((2 * j + 1) as f64)
                .sub(&prev.scale_real(j as f64))
                .scale_real(1.0 / (j + 1) as f64);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Legendre polynomial normalized in `L²(dx/2)` on `[-1, 1]`.
    pub fn legendre_normalized(n: usize) -> Self {
        Self::legendre(n).scale_real(((2 * n + 1) as f64).sqrt())
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut out = Self::chebyshev_t(0);
        for _ in 0..n {
            out = out.mul_x();
        }
        out
    }

    pub fn from_monomial(p: &UniPoly<C64>) -> Self {
        let mut out = Self::zero();
        for c in p.coeffs().iter().rev() {
            out = out.mul_x();
            if out.coeffs.is_empty() {
                out.coeffs.push(C64::zero());
            }
            out.coeffs[0] += c;
        }
        Self::new(out.coeffs)
    }

    pub fn to_monomial(&self) -> UniPoly<C64> {
        UniPoly::new(self.monomial_coeffs())
    }

    /// Multiplication by `x`, using `x T_j = (T_{j+1} + T_{|j-1|}) / 2`.
    pub fn mul_x(&self) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let mut out = vec![C64::zero(); n + 1];
        for (j, &c) in self.coeffs.iter().enumerate() {
            if j == 0 {
                out[1] += c;
            } else {
                out[j + 1] += 0.5 * c;
                out[j - 1] += 0.5 * c;
            }
        }
        Self::new(out)
    }

    pub fn scale_real(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|j| {
                    self.coeffs.get(j).copied().unwrap_or_default() - other.coeffs.get(j).copied().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn derivative_once(&self) -> Self {
        let n = match self.coeffs.len() {
            0 | 1 => return Self::zero(),
            len => len - 1,
        };
        // two trailing zeros so d[k + 2] is always defined
        let mut d = vec![C64::zero(); n + 2];
        for k in (0..n).rev() {
            d[k] = d[k + 2] + 2.0 * (k + 1) as f64 * self.coeffs[k + 1];
        }
        d[0] *= 0.5;
        d.truncate(n);
        Self::new(d)
    }
}

impl Univariate for ChebPoly {
    fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Clenshaw recurrence.
    fn eval(&self, z: C64) -> C64 {
        let mut b1 = C64::zero();
        let mut b2 = C64::zero();
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            if j == 0 {
                return c + z * b1 - b2;
            }
            let b0 = c + 2.0 * z * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        C64::zero()
    }

    fn derivative(&self, k: usize) -> Self {
        let mut out = self.clone();
        for _ in 0..k {
            if out.coeffs.is_empty() {
                break;
            }
            out = out.derivative_once();
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![C64::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let p = 0.5 * a * b;
                out[i + j] += p;
                out[i.abs_diff(j)] += p;
            }
        }
        Self::new(out)
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|j| {
                    self.coeffs.get(j).copied().unwrap_or_default() + other.coeffs.get(j).copied().unwrap_or_default()
                })
                .collect(),
        )
    }

    fn scale(&self, c: C64) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    fn monomial_coeffs(&self) -> Vec<C64> {
        let n = self.coeffs.len();
        let mut out = vec![C64::zero(); n];
        if n == 0 {
            return out;
        }
        // monomial coefficients of T_{j-1} and T_j
        let mut prev: Vec<f64> = vec![1.0];
        let mut cur: Vec<f64> = vec![0.0, 1.0];
        out[0] += self.coeffs[0];
        for j in 1..n {
            for (i, &t) in cur.iter().enumerate() {
                out[i] += self.coeffs[j] * t;
            }
            let mut next = vec![0.0; j + 2];
            for (i, &t) in cur.iter().enumerate() {
                next[i + 1] += 2.0 * t;
            }
            for (i, &t) in prev.iter().enumerate() {
                next[i] -= t;
            }
            prev = cur;
            cur = next;
        }
        out
    }

    fn one() -> Self {
        Self::chebyshev_t(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn clenshaw_matches_trigonometric_form() {
        for n in [0usize, 1, 5, 17, 64] {
            let t = ChebPoly::chebyshev_t(n);
            for &x in &[-1.0, -0.3, 0.0, 0.71, 1.0] {
                let expected = (n as f64 * f64::acos(x)).cos();
                assert!((t.eval_real(x) - r(expected)).norm() < 1e-12, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn chebyshev_second_kind() {
        for n in [0usize, 1, 2, 7, 10] {
            let u = ChebPoly::chebyshev_u(n);
            let theta: f64 = 0.4;
            let expected = ((n + 1) as f64 * theta).sin() / theta.sin();
            assert!((u.eval_real(theta.cos()) - r(expected)).norm() < 1e-12);
            assert!((u.eval_real(1.0) - r((n + 1) as f64)).norm() < 1e-12);
        }
    }

    #[test]
    fn derivative_of_t_n_at_one_is_n_squared() {
        for n in 1..40 {
            let d = ChebPoly::chebyshev_t(n).derivative(1);
            assert!((d.eval_real(1.0) - r((n * n) as f64)).norm() < 1e-9 * (n * n) as f64);
        }
    }

    #[test]
    fn derivative_matches_monomial_route() {
        let p = ChebPoly::from_real(&[0.3, -1.0, 2.0, 0.5, -0.25, 1.5]);
        let m = p.to_monomial();
        for k in 0..7 {
            let a = p.derivative(k);
            let b = m.derivative(k);
            for &x in &[-0.9, 0.1, 0.6] {
                assert!((a.eval_real(x) - b.eval(&r(x))).norm() < 1e-11);
            }
        }
    }

    #[test]
    fn monomial_round_trip() {
        let m = UniPoly::<C64>::new(vec![r(1.0), r(-2.0), r(0.5), r(3.0)]);
        let c = ChebPoly::from_monomial(&m);
        let back = c.to_monomial();
        for (a, b) in back.coeffs().iter().zip(m.coeffs()) {
            assert!((a - b).norm() < 1e-14);
        }
        let x5 = ChebPoly::monomial(5);
        assert!((x5.eval_real(0.7) - r(0.7f64.powi(5))).norm() < 1e-15);
    }

    #[test]
    fn legendre_values() {
        let p = ChebPoly::legendre(2);
        assert!((p.eval_real(0.5) - r(-0.125)).norm() < 1e-15);
        let p = ChebPoly::legendre_normalized(1);
        assert!((p.eval_real(1.0) - r(3f64.sqrt())).norm() < 1e-15);
        assert!((ChebPoly::legendre(30).eval_real(1.0) - r(1.0)).norm() < 1e-12);
    }

    #[test]
    fn product_rule() {
        let a = ChebPoly::from_real(&[1.0, 2.0, -1.0]);
        let b = ChebPoly::from_real(&[0.5, 0.0, 0.0, 4.0]);
        let ab = a.mul(&b);
        for &x in &[-0.8, 0.2, 0.95] {
            assert!((ab.eval_real(x) - a.eval_real(x) * b.eval_real(x)).norm() < 1e-13);
        }
        assert_eq!(ab.degree(), Some(5));
    }
}
