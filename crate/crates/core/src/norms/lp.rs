//! `L^s(μ)` norms.
//!
//! For even integer `s` the integrand `|p|^s` is a polynomial and the
//! measure's Gauss rule is exact. Otherwise the support is split at the real
//! roots of `p`, where `|p|^s` has algebraic singularities, and each panel
//! gets a Gauss–Jacobi rule whose weight absorbs both those singularities
//! and the endpoint singularities of the Jacobi density.

use crate::error::{Error, Result};
use crate::norms::measure::{gauss_jacobi, jacobi_mass, Measure, Weight};
use crate::norms::sup::sample_count;
use crate::polycore::Univariate;
use crate::scalar::C64;

fn is_even_integer(s: f64) -> bool {
    s.fract() == 0.0 && (s as i64) % 2 == 0
}

/// `(∫ |p|^s dμ)^{1/s}`.
pub fn lp_norm<P: Univariate>(p: &P, mu: &Measure, s: f64) -> Result<f64> {
    if !(s >= 1.0 && s.is_finite()) {
        return Err(Error::InvalidParameter(format!("Lp exponent must be finite and >= 1, got {s}")));
    }
    let Some(d) = p.degree() else {
        return Ok(0.0);
    };
    let budget = mu.budget();
    let support = mu.support();
    let at = |t: f64| p.eval_real(support.from_unit(t)).norm();

    if is_even_integer(s) || matches!(mu.weight(), Weight::Tabulated(_)) {
        if is_even_integer(s) && s * d as f64 > (2 * budget + 1) as f64 {
            return Err(Error::DegreeBeyondBudget { degree: d, budget });
        }
        if !is_even_integer(s) && d > 2 * budget {
            return Err(Error::DegreeBeyondBudget { degree: d, budget });
        }
        let rule = mu.unit_rule();
        let vals: Vec<f64> = rule.nodes.iter().map(|&t| at(t)).collect();
        let scale = vals.iter().copied().fold(0.0, f64::max);
        if scale == 0.0 {
            return Ok(0.0);
        }
        let sum: f64 = vals.iter().zip(&rule.weights).map(|(v, w)| w * (v / scale).powf(s)).sum();
        return Ok(scale * sum.powf(1.0 / s));
    }
    if d > 2 * budget {
        return Err(Error::DegreeBeyondBudget { degree: d, budget });
    }
    let (alpha, beta) = mu.jacobi_params().expect("non-tabulated weights are Jacobi");

    let ts = crate::norms::sets::Interval::unit().lobatto_points(sample_count(d));
    let scale = ts.iter().map(|&t| at(t)).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let roots = match real_phase(p) {
        Some(u) => real_roots(&|t| (u * p.eval_real(support.from_unit(t))).re, &ts),
        None => Vec::new(),
    };

    let mut breaks = Vec::with_capacity(roots.len() + 2);
    breaks.push((-1.0, false));
    breaks.extend(roots.iter().map(|&r| (r, true)));
    breaks.push((1.0, false));

    let n_nodes = ((s * d as f64) / 2.0).ceil() as usize + 24;
    let mut cache: Vec<((u64, u64), crate::norms::measure::Rule, f64)> = Vec::new();
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let ((lo, lo_root), (hi, hi_root)) = (w[0], w[1]);
        let h = 0.5 * (hi - lo);
        if h <= 0.0 {
            continue;
        }
        let lo_end = lo == -1.0;
        let hi_end = hi == 1.0;
        let e_l = if lo_root { s } else { 0.0 } + if lo_end { beta } else { 0.0 };
        let e_r = if hi_root { s } else { 0.0 } + if hi_end { alpha } else { 0.0 };
        let key = (e_r.to_bits(), e_l.to_bits());
        let idx = match cache.iter().position(|c| c.0 == key) {
            Some(i) => i,
            None => {
                cache.push((key, gauss_jacobi(n_nodes, e_r, e_l), jacobi_mass(e_r, e_l)));
                cache.len() - 1
            }
        };
        let (_, rule, mass) = &cache[idx];
        let roots_here = lo_root as i32 + hi_root as i32;
        let h_pow = h.powf(s * roots_here as f64);
        let mut panel = 0.0;
        for (&u, &wt) in rule.nodes.iter().zip(&rule.weights) {
            let t = lo + h * (1.0 + u);
            let mut q = at(t) / scale;
            if lo_root {
                q /= h * (1.0 + u);
            }
            if hi_root {
                q /= h * (1.0 - u);
            }
            let left = if lo_end { h.powf(beta) } else { (1.0 + t).powf(beta) };
            let right = if hi_end { h.powf(alpha) } else { (1.0 - t).powf(alpha) };
            panel += wt * q.powf(s) * left * right;
        }
        total += h * mass * h_pow * panel;
    }
    let ratio = total / jacobi_mass(alpha, beta);
    Ok(scale * ratio.powf(1.0 / s))
}

/// A unit `u` with `u·p` real on the real line, if there is one. Rotating
/// by the phase of the largest coefficient catches complex multiples of
/// real polynomials, whose roots need the same splitting.
fn real_phase<P: Univariate>(p: &P) -> Option<C64> {
    let c = p.monomial_coeffs();
    let big = c.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm()))?;
    let u = big.conj() / big.norm();
    c.iter().all(|z| (u * z).im.abs() <= 1e-13 * big.norm()).then_some(u)
}

/// Simple real roots in `(-1, 1)` located by sign changes on the samples
/// `ts` and bisection to machine precision.
fn real_roots(g: &dyn Fn(f64) -> f64, ts: &[f64]) -> Vec<f64> {
    let vals: Vec<f64> = ts.iter().map(|&t| g(t)).collect();
    let mut roots: Vec<f64> = Vec::new();
    for j in 0..ts.len() - 1 {
        let (a, b) = (ts[j], ts[j + 1]);
        let (fa, fb) = (vals[j], vals[j + 1]);
        let root = if fa == 0.0 {
            (j > 0).then_some(a)
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let fm = g(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            Some(0.5 * (lo + hi))
        } else {
            None
        };
        if let Some(r) = root {
            if r > -1.0 && r < 1.0 && roots.last().is_none_or(|&last| r - last > 1e-14) {
                roots.push(r);
            }
        }
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::sets::Interval;
    use crate::polycore::{ChebPoly, UniPoly};
    use crate::scalar::C64;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn constants_and_linear_l2() {
        let mu = Measure::lebesgue(16);
        assert!((lp_norm(&UniPoly::constant(c(1.0)), &mu, 3.7).unwrap() - 1.0).abs() < 1e-13);
        let x = UniPoly::<C64>::x();
        assert!((lp_norm(&x, &mu, 2.0).unwrap() - (1.0f64 / 3.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn odd_and_fractional_exponents() {
        let mu = Measure::lebesgue(16);
        let x = UniPoly::<C64>::x();
        // ∫|x|^s dx/2 = 1/(s+1)
        for s in [1.0f64, 1.5, 3.0, 5.25] {
            let expected = (1.0 / (s + 1.0)).powf(1.0 / s);
            assert!((lp_norm(&x, &mu, s).unwrap() - expected).abs() < 1e-12, "s = {s}");
        }
        // ∫|x² - 1/4| dx/2 = 1/4
        let p = UniPoly::new(vec![c(-0.25), c(0.0), c(1.0)]);
        assert!((lp_norm(&p, &mu, 1.0).unwrap() - 0.25).abs() < 1e-13);
    }

    #[test]
    fn jacobi_weight_with_roots() {
        // Chebyshev measure: ∫|x| dx / (π √(1-x²)) = 2/π
        let mu = Measure::jacobi(-0.5, -0.5, 16).unwrap();
        let x = ChebPoly::monomial(1);
        assert!((lp_norm(&x, &mu, 1.0).unwrap() - 2.0 / std::f64::consts::PI).abs() < 1e-12);
        // |T_3| has mean 2/π under the same measure
        let t3 = ChebPoly::chebyshev_t(3);
        assert!((lp_norm(&t3, &mu, 1.0).unwrap() - 2.0 / std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn affine_support() {
        let mu = Measure::new(Interval::new(0.0, 2.0).unwrap(), Weight::Lebesgue, 8).unwrap();
        // mean of |x - 1| on [0, 2] is 1/2
        let p = UniPoly::new(vec![c(-1.0), c(1.0)]);
        assert!((lp_norm(&p, &mu, 1.0).unwrap() - 0.5).abs() < 1e-13);
    }

    #[test]
    fn budget_is_enforced() {
        let mu = Measure::lebesgue(4);
        let t5 = ChebPoly::chebyshev_t(5);
        assert!(matches!(lp_norm(&t5, &mu, 2.0), Err(Error::DegreeBeyondBudget { .. })));
        assert!(lp_norm(&t5, &mu, 0.5).is_err());
    }
}
