//! Constant-coefficient directional derivatives and homogeneous differential operators.

use crate::error::{Error, Result};
use crate::polycore::MultiPoly;
use crate::scalar::{binomial, factorial, Scalar};

/// Directional derivative `v_1 D_1 + ⋯ + v_N D_N` with a constant direction.
#[derive(Clone, Debug, PartialEq)]
pub struct DirOp<T> {
    v: Vec<T>,
}

impl<T: Scalar> DirOp<T> {
    pub fn new(v: Vec<T>) -> Result<Self> {
        if v.is_empty() || v.iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidParameter("direction vector must be nonzero".into()));
        }
        Ok(Self { v })
    }

    pub fn v(&self) -> &[T] {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    fn apply_once(&self, f: &MultiPoly<T>) -> Result<MultiPoly<T>> {
        let mut out = MultiPoly::zero(f.nvars());
        for (j, vj) in self.v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            out = &out + &f.partial(j, 1)?.scale(vj);
        }
        Ok(out)
    }
}

/// `D^{(k)} f`, the k-fold application of the directional derivative.
pub fn dir_derivative<T: Scalar>(f: &MultiPoly<T>, d: &DirOp<T>, k: u32) -> Result<MultiPoly<T>> {
    if f.nvars() != d.dim() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: d.dim() });
    }
    let mut out = f.clone();
    for _ in 0..k {
        if out.is_zero() {
            break;
        }
        out = d.apply_once(&out)?;
    }
    Ok(out)
}

/// Applies `H(D_1, …, D_N)` to `f`, where `H` is homogeneous of degree `k >= 1`.
pub fn hdop_apply<T: Scalar>(h: &MultiPoly<T>, f: &MultiPoly<T>) -> Result<MultiPoly<T>> {
    if h.nvars() != f.nvars() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: h.nvars() });
    }
    match h.homogeneous_degree() {
        Some(k) if k >= 1 => {}
        _ => return Err(Error::NonHomogeneousOperator),
    }
    let mut out = MultiPoly::zero(f.nvars());
    for (alpha, c) in h.terms() {
        out = &out + &f.partial_multi(alpha)?.scale(c);
    }
    Ok(out)
}

/// Both sides of the power identity for `D f`, each multiplied by `k!`:
/// `k! (D f)^k` and `Σ_j (-1)^j C(k, j) f^j D^{(k)}(f^{k-j})`.
pub fn di_sides<T: Scalar>(f: &MultiPoly<T>, d: &DirOp<T>, k: u32) -> Result<(MultiPoly<T>, MultiPoly<T>)> {
    if f.nvars() != d.dim() {
        return Err(Error::DimensionMismatch { expected: f.nvars(), got: d.dim() });
    }
    let df = dir_derivative(f, d, 1)?;
    let lhs = df.power(k)?.scale(&T::from_bigint(&factorial(k as u64)));

    // f^0, f^1, ..., f^k
    let mut powers = Vec::with_capacity(k as usize + 1);
    powers.push(MultiPoly::one(f.nvars()));
    for j in 1..=k as usize {
        powers.push(&powers[j - 1] * f);
    }
    let mut rhs = MultiPoly::zero(f.nvars());
    for j in 0..=k as usize {
        let inner = dir_derivative(&powers[k as usize - j], d, k)?;
        if inner.is_zero() {
            continue;
        }
        let mut term = (&powers[j] * &inner).scale(&T::from_bigint(&binomial(k as u64, j as u64)));
        if j % 2 == 1 {
            term = term.scale(&T::from_i64(-1));
        }
        rhs = &rhs + &term;
    }
    Ok((lhs, rhs))
}

/// Below this magnitude both sides are treated as underflowed and the
/// residual is reported in absolute terms.
const UNDERFLOW_SCALE: f64 = 1e-12;

/// Max coefficient modulus of the identity's defect, relative to the larger
/// side. Exact backends return exactly zero when the identity holds.
pub fn di_residual<T: Scalar>(f: &MultiPoly<T>, d: &DirOp<T>, k: u32) -> Result<f64> {
    if k < 1 {
        return Err(Error::InvalidParameter("identity order k must be >= 1".into()));
    }
    let (lhs, rhs) = di_sides(f, d, k)?;
    let diff = (&lhs - &rhs).max_coeff_magnitude();
    if diff == 0.0 {
        return Ok(0.0);
    }
    let scale = lhs.max_coeff_magnitude().max(rhs.max_coeff_magnitude());
    if scale < UNDERFLOW_SCALE {
        Ok(diff)
    } else {
        Ok(diff / scale)
    }
}
