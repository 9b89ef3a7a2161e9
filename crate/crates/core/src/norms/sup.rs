//! Sup norms by sampling plus Brent refinement of the sampled peaks.
//!
//! Every value here is a maximum over finitely many points, so it can only
//! under-estimate the true supremum. With the default sampling density the
//! deficit is far below the test tolerances, but anything certified from
//! these values is a lower bound.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::norms::sets::{CompactSet, Interval, Piece, SampledRegion};
use crate::polycore::{MultiPoly, Univariate};
use crate::scalar::C64;

const REFINE_WIDTH: f64 = 1e-10;
const MAX_BRENT_ITERS: usize = 100;
/// A sample grid with 8 points per unit of degree can sit about 2% below a
/// local maximum of a degree-n polynomial, so the band must exceed that.
const REFINE_BAND: f64 = 0.025;
const MAX_REFINED: usize = 1024;
/// Values this close count as ties, so rounding noise cannot move the argmax.
const TIE_TOLERANCE: f64 = 1e-14;

/// A maximum value and where it was attained.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Argmax {
    pub value: f64,
    pub at: f64,
}

/// Samples per unit of degree on one-dimensional pieces.
pub fn sample_count(degree: usize) -> usize {
    8 * (degree + 1)
}

/// Brent's method for a maximum of `f` on `[lo, hi]`, started at the
/// sample `x0` with value `f0`.
fn brent_max(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, x0: f64, f0: f64) -> Argmax {
    const CGOLD: f64 = 0.381_966_011_250_105;
    let g = |x: f64| -f(x);
    let (mut a, mut b) = (lo.min(hi), lo.max(hi));
    let (mut x, mut w, mut v) = (x0, x0, x0);
    let (mut fx, mut fw, mut fv) = (-f0, -f0, -f0);
    let (mut d, mut e) = (0.0f64, 0.0f64);
    for _ in 0..MAX_BRENT_ITERS {
        let m = 0.5 * (a + b);
        let tol = REFINE_WIDTH * (1.0 + x.abs());
        let t2 = 2.0 * tol;
        if (x - m).abs() <= t2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            } else {
                q = -q;
            }
            let etemp = e;
            e = d;
            if p.abs() < (0.5 * q * etemp).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < t2 || b - u < t2 {
                    d = if m >= x { tol } else { -tol };
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= m { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol { x + d } else { x + if d >= 0.0 { tol } else { -tol } };
        let fu = g(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            (v, fv, w, fw, x, fx) = (w, fw, x, fx, u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv, w, fw) = (w, fw, u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    Argmax { value: -fx, at: x }
}

/// Maximizes `f` over `[xs[0], xs[last]]` from increasing samples `xs`.
///
/// Each sampled local maximum within a relative band of the sampled maximum
/// is refined on the bracket formed by its neighbours, highest first. Ties
/// keep the smallest abscissa.
pub fn maximize_sampled(f: &dyn Fn(f64) -> f64, xs: &[f64]) -> Argmax {
    assert!(!xs.is_empty());
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let sampled_max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let n = xs.len();
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&j| (j == 0 || vals[j - 1] <= vals[j]) && (j == n - 1 || vals[j + 1] <= vals[j]))
        .collect();
    peaks.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]).then(i.cmp(&j)));
    let mut cands: Vec<Argmax> = Vec::new();
    for (rank, &j) in peaks.iter().enumerate() {
        let mut cand = Argmax { value: vals[j], at: xs[j] };
        if vals[j] >= (1.0 - REFINE_BAND) * sampled_max && rank < MAX_REFINED && n > 1 {
            let g = brent_max(f, xs[j.saturating_sub(1)], xs[(j + 1).min(n - 1)], xs[j], vals[j]);
            if g.value > cand.value {
                cand = g;
            }
        }
        cands.push(cand);
    }
    let top = cands.iter().map(|c| c.value).fold(f64::NEG_INFINITY, f64::max);
    cands
        .into_iter()
        .filter(|c| c.value >= top * (1.0 - TIE_TOLERANCE))
        .min_by(|a, b| a.at.total_cmp(&b.at))
        .unwrap_or(Argmax { value: vals[0], at: xs[0] })
}

fn degree_of<P: Univariate>(p: &P) -> usize {
    p.degree().unwrap_or(0)
}

/// `max |p|` on an interval.
pub fn sup_interval<P: Univariate>(p: &P, iv: &Interval) -> Argmax {
    if p.degree().is_none() {
        return Argmax { value: 0.0, at: iv.a() };
    }
    let xs = iv.lobatto_points(sample_count(degree_of(p)));
    maximize_sampled(&|x| p.eval_real(x).norm(), &xs)
}

/// `max |p(x)| w(x)` on an interval for a continuous weight `w`.
pub fn sup_interval_weighted<P: Univariate>(p: &P, iv: &Interval, extra_degree: usize, w: &dyn Fn(f64) -> f64) -> Argmax {
    if p.degree().is_none() {
        return Argmax { value: 0.0, at: iv.a() };
    }
    let xs = iv.lobatto_points(sample_count(degree_of(p) + extra_degree));
    maximize_sampled(&|x| p.eval_real(x).norm() * w(x), &xs)
}

/// Maximum of `|p|` along a parametrized curve `t ∈ [0, 1] ↦ γ(t)`.
pub fn sup_curve<P: Univariate>(p: &P, gamma: &dyn Fn(f64) -> C64, samples: usize) -> f64 {
    let ts = Interval::new(0.0, 1.0).expect("unit interval").lobatto_points(samples);
    maximize_sampled(&|t| p.eval(gamma(t)).norm(), &ts).value
}

fn sup_circle<P: Univariate>(p: &P, center: C64, radius: f64) -> f64 {
    let n = sample_count(degree_of(p)) + 1;
    sup_curve(p, &|t| center + C64::from_polar(radius, 2.0 * PI * t), n)
}

/// Sup norm of a univariate polynomial on a one-dimensional set.
pub fn sup_uni<P: Univariate>(p: &P, set: &CompactSet) -> Result<f64> {
    match set {
        CompactSet::Interval(iv) => Ok(sup_interval(p, iv).value),
        CompactSet::Union(parts) => Ok(parts
            .iter()
            .map(|part| match part {
                Piece::Interval(iv) => sup_interval(p, iv).value,
                Piece::Point(z) => p.eval(*z).norm(),
            })
            .fold(0.0, f64::max)),
        // maximum modulus principle: the boundary circle suffices
        CompactSet::Disk { center, radius } => Ok(if p.degree().is_none() { 0.0 } else { sup_circle(p, *center, *radius) }),
        CompactSet::Box(parts) if parts.len() == 1 => Ok(sup_interval(p, &parts[0]).value),
        other => Err(Error::DimensionMismatch { expected: other.dim(), got: 1 }),
    }
}

/// Sup norm over `E + D_r = {z + ζ : z ∈ E, |ζ| <= r}`, which is the spectral
/// norm attached to the Taylor-disk norm.
pub fn sup_thickened<P: Univariate>(p: &P, set: &CompactSet, r: f64) -> Result<f64> {
    if p.degree().is_none() {
        return Ok(0.0);
    }
    let n = sample_count(degree_of(p)) + 1;
    let stadium = |iv: &Interval| -> f64 {
        let (a, b) = (iv.a(), iv.b());
        let top = sup_curve(p, &|t| C64::new(a + (b - a) * t, r), n);
        let bottom = sup_curve(p, &|t| C64::new(a + (b - a) * t, -r), n);
        let right = sup_curve(p, &|t| C64::new(b, 0.0) + C64::from_polar(r, -FRAC_PI_2 + PI * t), n);
        let left = sup_curve(p, &|t| C64::new(a, 0.0) + C64::from_polar(r, FRAC_PI_2 + PI * t), n);
        top.max(bottom).max(right).max(left)
    };
    match set {
        CompactSet::Interval(iv) => Ok(stadium(iv)),
        CompactSet::Box(parts) if parts.len() == 1 => Ok(stadium(&parts[0])),
        CompactSet::Union(parts) => Ok(parts
            .iter()
            .map(|part| match part {
                Piece::Interval(iv) => stadium(iv),
                Piece::Point(z) => sup_circle(p, *z, r),
            })
            .fold(0.0, f64::max)),
        CompactSet::Disk { center, radius } => Ok(sup_circle(p, *center, radius + r)),
        other => Err(Error::DimensionMismatch { expected: other.dim(), got: 1 }),
    }
}

fn grid_points(iv: &Interval, degree: usize) -> Vec<f64> {
    iv.lobatto_points(4 * (degree + 1) + 1)
}

/// Coordinate-wise Brent refinement of a tensor-grid maximum.
fn refine_box(f: &dyn Fn(&[f64]) -> f64, start: &[f64], brackets: &[(f64, f64)]) -> f64 {
    let mut x = start.to_vec();
    let mut best = f(&x);
    for _ in 0..4 {
        for axis in 0..x.len() {
            let (lo, hi) = brackets[axis];
            let mut probe = x.clone();
            let g = brent_max(
                &|t| {
                    let mut y = probe.clone();
                    y[axis] = t;
                    f(&y)
                },
                lo,
                hi,
                x[axis],
                best,
            );
            if g.value > best {
                best = g.value;
                probe[axis] = g.at;
                x = probe;
            }
        }
    }
    best
}

fn sup_box(p: &MultiPoly<C64>, parts: &[Interval]) -> Result<f64> {
    let nv = p.nvars();
    let degree = p.total_degree().unwrap_or(0);
    let axes: Vec<Vec<f64>> = parts.iter().map(|iv| grid_points(iv, degree)).collect();
    let values: Vec<f64> = if nv == 2 {
        p.eval_grid_2d(&axes[0], &axes[1])?.into_iter().map(|z| z.norm()).collect()
    } else {
        let total: usize = axes.iter().map(Vec::len).product();
        (0..total)
            .map(|mut idx| {
                let x: Vec<f64> = axes
                    .iter()
                    .map(|ax| {
                        let i = idx % ax.len();
                        idx /= ax.len();
                        ax[i]
                    })
                    .collect();
                p.eval_real(&x).norm()
            })
            .collect()
    };
    let sampled_max = values.iter().copied().fold(0.0, f64::max);
    if sampled_max == 0.0 {
        return Ok(0.0);
    }
    // Refine the best few grid points.
    let mut order: Vec<usize> = (0..values.len()).filter(|&i| values[i] >= (1.0 - REFINE_BAND) * sampled_max).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    order.truncate(8);
    let f = |x: &[f64]| p.eval_real(x).norm();
    let mut best = sampled_max;
    for idx in order {
        let mut rem = idx;
        let mut start = Vec::with_capacity(nv);
        let mut brackets = Vec::with_capacity(nv);
        for ax in &axes {
            let i = rem % ax.len();
            rem /= ax.len();
            start.push(ax[i]);
            brackets.push((ax[i.saturating_sub(1)], ax[(i + 1).min(ax.len() - 1)]));
        }
        best = best.max(refine_box(&f, &start, &brackets));
    }
    Ok(best)
}

/// `max phi(|p|, x, y)` over a sampled region.
pub(crate) fn max_over_region(p: &MultiPoly<C64>, region: &SampledRegion, phi: &dyn Fn(f64, f64, f64) -> f64) -> Result<f64> {
    let axis = region.axis();
    let grid = region.grid();
    let values = p.eval_grid_2d(axis, axis)?;
    let mut best = 0.0f64;
    for (i, (&inside, z)) in region.mask().iter().zip(&values).enumerate() {
        if inside {
            best = best.max(phi(z.norm(), axis[i % grid], axis[i / grid]));
        }
    }
    for pt in region.extra() {
        best = best.max(phi(p.eval_real(pt).norm(), pt[0], pt[1]));
    }
    Ok(best)
}

/// Sup norm of a multivariate polynomial.
pub fn sup_multi(p: &MultiPoly<C64>, set: &CompactSet) -> Result<f64> {
    if set.dim() != p.nvars() {
        return Err(Error::DimensionMismatch { expected: set.dim(), got: p.nvars() });
    }
    if p.is_zero() {
        return Ok(0.0);
    }
    match set {
        CompactSet::Box(parts) if parts.len() >= 2 => sup_box(p, parts),
        CompactSet::Region2D(region) => max_over_region(p, region, &|v, _, _| v),
        _ => sup_uni(&p.to_uni()?, set),
    }
}
