//! Estimates of the spectral norm `q_σ(p) = lim_s q(p^s)^{1/s}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::spec::NormSpec;
use crate::polycore::Univariate;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralEstimate {
    /// `L` from the fit `q(p^s)^{1/s} ≈ L (1 + c/s)` on the second half of the tail.
    pub limit: f64,
    /// The fitted `c`.
    pub correction: f64,
    /// `q(p^{s_max})^{1/s_max}`.
    pub last: f64,
    /// `q(p^s)^{1/s}` for `s = 1..=s_max`.
    pub values: Vec<f64>,
    pub monotone: bool,
}

/// Least-squares fit of `y = a + b x`.
pub(crate) fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let b = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (my - b * mx, b)
}

pub fn spectral_norm_estimate<P: Univariate>(p: &P, q: &NormSpec, s_max: usize) -> Result<SpectralEstimate> {
    if s_max < 4 {
        return Err(Error::InvalidParameter(format!("spectral estimate needs s_max >= 4, got {s_max}")));
    }
    let mut values = Vec::with_capacity(s_max);
    let mut power = p.clone();
    for s in 1..=s_max {
        if s > 1 {
            power = power.mul(p);
        }
        values.push((q.ln_eval(&power)? / s as f64).exp());
    }
    let lo = s_max / 2;
    let xs: Vec<f64> = (lo..=s_max).map(|s| 1.0 / s as f64).collect();
    let (a, b) = linear_fit(&xs, &values[lo - 1..]);
    let tol = 1e-12 * values.iter().copied().fold(0.0, f64::max);
    let nonincreasing = values.windows(2).all(|w| w[1] <= w[0] + tol);
    let nondecreasing = values.windows(2).all(|w| w[1] + tol >= w[0]);
    Ok(SpectralEstimate {
        limit: a,
        correction: if a != 0.0 { b / a } else { 0.0 },
        last: values[s_max - 1],
        monotone: nonincreasing || nondecreasing,
        values,
    })
}
