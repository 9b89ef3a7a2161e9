//! The limit of `m_k / k` from finitely many orders `k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::linear_fit;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticExponent {
    /// `(k, m_k / k)` in increasing `k`.
    pub trend: Vec<(u32, f64)>,
    /// Local maxima of the trend in its upper half, the points the limit is fitted on.
    pub envelope: Vec<(u32, f64)>,
    /// Intercept `L` of `m_k / k ≈ L + c / k` on the envelope.
    pub estimate: f64,
    pub max_ratio: f64,
}

/// Estimates `limsup_k m_k / k` from `(k, m_k)` pairs with distinct `k >= 1`.
pub fn asymptotic_exponent(mk: &[(u32, f64)]) -> Result<AsymptoticExponent> {
    let mut pts: Vec<(u32, f64)> = mk.to_vec();
    pts.sort_by_key(|p| p.0);
    pts.dedup_by_key(|p| p.0);
    if pts.len() < 3 || pts[0].0 == 0 {
        return Err(Error::InvalidParameter("need at least 3 distinct orders k >= 1".into()));
    }
    let trend: Vec<(u32, f64)> = pts.iter().map(|&(k, m)| (k, m / k as f64)).collect();
    let n = trend.len();
    let envelope: Vec<(u32, f64)> = (n / 2..n)
        .filter(|&i| trend[i].1 >= trend[i - 1].1 && (i == n - 1 || trend[i].1 >= trend[i + 1].1))
        .map(|i| trend[i])
        .collect();
    let estimate = match envelope.len() {
        0 => trend[n - 1].1,
        1 => envelope[0].1,
        _ => {
            let xs: Vec<f64> = envelope.iter().map(|p| 1.0 / p.0 as f64).collect();
            let ys: Vec<f64> = envelope.iter().map(|p| p.1).collect();
            linear_fit(&xs, &ys).0
        }
    };
    let max_ratio = trend.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    Ok(AsymptoticExponent { trend, envelope, estimate, max_ratio })
}

/// `s · m · ⌈k / s⌉`, the order-`k` exponent of the factorial-weighted norm.
pub fn qms_closed_form(m: f64, s: u32, k: u32) -> f64 {
    (s * k.div_ceil(s)) as f64 * m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_exponents() {
        let mk: Vec<(u32, f64)> = (1..=6).map(|k| (k, 2.0 * k as f64)).collect();
        let a = asymptotic_exponent(&mk).unwrap();
        assert!((a.estimate - 2.0).abs() < 1e-12);
        assert!(asymptotic_exponent(&mk[..2]).is_err());
    }

    #[test]
    fn staircase_separates_limit_from_maximum() {
        let mk: Vec<(u32, f64)> = (1..=12).map(|k| (k, qms_closed_form(1.0, 3, k))).collect();
        let a = asymptotic_exponent(&mk).unwrap();
        assert!(a.estimate <= 1.1 && a.estimate >= 0.9, "{}", a.estimate);
        assert_eq!(a.max_ratio, 3.0);
        assert!(a.trend.iter().all(|p| p.1 > 0.99 && p.1 <= 3.0));
    }
}
