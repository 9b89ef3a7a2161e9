//! Power-law fits of `log factor` against `log n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_FIT_ROWS: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope_ls: f64,
    /// Slope of the upper concave envelope, a finite-data stand-in for a limsup.
    pub slope_envelope: f64,
    pub intercept: f64,
    /// Degree window `[lo, hi]` actually used.
    pub window: [f64; 2],
    pub r2: f64,
    pub rows_used: usize,
    /// Rows with factor zero, left out because their logarithm is undefined.
    pub rows_excluded: usize,
}

/// Default window `[n_max / 4, n_max]`.
pub fn default_window(ns: &[f64]) -> [f64; 2] {
    let hi = ns.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    [hi / 4.0, hi]
}

/// Fits `(n, factor)` rows; `window` defaults to [`default_window`].
pub fn fit_power_law(rows: &[(f64, f64)], window: Option<[f64; 2]>) -> Result<ExponentFit> {
    if let Some(&(n, f)) = rows.iter().find(|(n, f)| !(f.is_finite() && *f >= 0.0 && n.is_finite() && *n > 0.0)) {
        return Err(Error::InvalidParameter(format!("row (n = {n}, factor = {f}) is not a positive finite sample")));
    }
    let ns: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let window = window.unwrap_or_else(|| default_window(&ns));
    let in_window: Vec<&(f64, f64)> = rows.iter().filter(|(n, _)| *n >= window[0] && *n <= window[1]).collect();
    let excluded = in_window.iter().filter(|(_, f)| *f == 0.0).count();
    let mut pts: Vec<(f64, f64)> = in_window
        .iter()
        .filter(|(_, f)| *f > 0.0)
        .map(|(n, f)| (n.ln(), f.ln()))
        .collect();
    if pts.len() < MIN_FIT_ROWS {
        return Err(Error::TooFewRows { needed: MIN_FIT_ROWS, found: pts.len() });
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (intercept, slope) = crate::norms::linear_fit(&xs, &ys);
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss_tot: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let scale: f64 = ys.iter().map(|y| y * y).sum();
    let r2 = if ss_tot > 1e-24 * scale.max(1.0) { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(ExponentFit {
        slope_ls: slope,
        slope_envelope: envelope_slope(&pts, slope),
        intercept,
        window,
        r2,
        rows_used: pts.len(),
        rows_excluded: excluded,
    })
}

/// Steepest edge of the upper concave hull of points sorted by abscissa.
///
/// On convex data the hull is a single chord that can fall below the
/// least-squares slope; the steepest slope between consecutive points is
/// used then, so the envelope never reports less than the fit.
fn envelope_slope(pts: &[(f64, f64)], slope_ls: f64) -> f64 {
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or below the chord from a to p
            if (b.1 - a.1) * (p.0 - a.0) <= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let slope = |a: (f64, f64), b: (f64, f64)| (b.1 - a.1) / (b.0 - a.0);
    let steepest_hull = hull.windows(2).map(|w| slope(w[0], w[1])).fold(f64::NEG_INFINITY, f64::max);
    if steepest_hull >= slope_ls {
        return steepest_hull;
    }
    pts.windows(2)
        .filter(|w| w[1].0 > w[0].0)
        .map(|w| slope(w[0], w[1]))
        .fold(steepest_hull, f64::max)
        .max(slope_ls)
}
