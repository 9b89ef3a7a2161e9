//! Fitted two-sided comparison constants between two norms.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::spec::NormSpec;
use crate::norms::spectral::linear_fit;
use crate::norms::lp::lp_norm;
use crate::norms::measure::{Measure, DEFAULT_BUDGET};
use crate::norms::sets::CompactSet;
use crate::norms::sup::sup_uni;
use crate::polycore::Univariate;

/// Tail slopes above this are treated as an unbounded ratio.
const MAX_SLOPE: f64 = 50.0;

/// Worst ratio at one degree and the corpus index attaining it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub degree: usize,
    pub index: usize,
    pub ratio: f64,
}

/// `q1(P) <= A n^a q2(P)` and `q2(P) <= B n^b q1(P)` on the corpus, with
/// `n = max(deg P, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NikolskiiCertificate {
    #[serde(rename = "A")]
    pub a_const: f64,
    pub a: f64,
    #[serde(rename = "B")]
    pub b_const: f64,
    pub b: f64,
    pub degree_range: (usize, usize),
    /// Smallest relative gap `1 - ratio / (A n^a)` over degrees, both sides.
    pub slack: f64,
    pub forward_witness: Witness,
    pub backward_witness: Witness,
    pub failed: Option<String>,
}

fn fit_side(worst: &BTreeMap<usize, Witness>) -> (f64, f64, Option<String>) {
    if let Some(w) = worst.values().find(|w| !w.ratio.is_finite()) {
        return (f64::INFINITY, f64::INFINITY, Some(format!("non-finite ratio at degree {}", w.degree)));
    }
    let pts: Vec<(f64, f64)> = worst.values().map(|w| ((w.degree.max(1) as f64).ln(), w.ratio.ln())).collect();
    let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let slope = if pts.len() >= 2 { linear_fit(&xs, &ys).1 } else { 0.0 };
    let exponent = slope.max(0.0);
    let constant = pts.iter().map(|(x, y)| (y - exponent * x).exp()).fold(0.0, f64::max);
    let failed = (slope > MAX_SLOPE).then(|| format!("ratio grows like n^{slope:.1}"));
    (constant, exponent, failed)
}

/// Fits the constants over `corpus`, a list of `(degree, polynomial)` pairs.
pub fn fit_nikolskii<P: Univariate>(q1: &NormSpec, q2: &NormSpec, corpus: &[(usize, P)]) -> Result<NikolskiiCertificate> {
    if corpus.is_empty() {
        return Err(Error::InvalidParameter("Nikolskii fit needs a nonempty corpus".into()));
    }
    let mut fwd: BTreeMap<usize, Witness> = BTreeMap::new();
    let mut bwd: BTreeMap<usize, Witness> = BTreeMap::new();
    for (index, (degree, p)) in corpus.iter().enumerate() {
        let v1 = q1.ln_eval(p)?;
        let v2 = q2.ln_eval(p)?;
        if v1 == f64::NEG_INFINITY && v2 == f64::NEG_INFINITY {
            continue;
        }
        for (map, ratio) in [(&mut fwd, (v1 - v2).exp()), (&mut bwd, (v2 - v1).exp())] {
            let entry = map.entry(*degree).or_insert(Witness { degree: *degree, index, ratio: 0.0 });
            if ratio > entry.ratio || ratio.is_nan() {
                *entry = Witness { degree: *degree, index, ratio };
            }
        }
    }
    if fwd.is_empty() {
        return Err(Error::InvalidParameter("corpus contains only zero polynomials".into()));
    }
    let (a_const, a, fail_a) = fit_side(&fwd);
    let (b_const, b, fail_b) = fit_side(&bwd);
    let slack_of = |map: &BTreeMap<usize, Witness>, c: f64, e: f64| {
        map.values()
            .map(|w| 1.0 - w.ratio / (c * (w.degree.max(1) as f64).powf(e)))
            .fold(f64::INFINITY, f64::min)
    };
    let slack = slack_of(&fwd, a_const, a).min(slack_of(&bwd, b_const, b));
    let worst = |map: &BTreeMap<usize, Witness>| {
        map.values().max_by(|x, y| x.ratio.total_cmp(&y.ratio)).cloned().expect("nonempty")
    };
    Ok(NikolskiiCertificate {
        a_const,
        a,
        b_const,
        b,
        degree_range: (*fwd.keys().next().unwrap(), *fwd.keys().last().unwrap()),
        slack,
        forward_witness: worst(&fwd),
        backward_witness: worst(&bwd),
        failed: fail_a.or(fail_b),
    })
}

/// Outcome of the classical sandwich
/// `||P||_{L^s} <= ||P||_{[-1,1]} <= (2(s+1)n²)^{1/s} ||P||_{L^s}`
/// for the normalized Lebesgue measure `dx/2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SandwichCheck {
    pub s: f64,
    pub checked: usize,
    pub lower_violations: usize,
    pub upper_violations: usize,
    /// Largest `||P||_{L^s} / ||P||_{[-1,1]}`.
    pub worst_lower: f64,
    /// Largest `||P||_{[-1,1]} / ((2(s+1)n²)^{1/s} ||P||_{L^s})`.
    pub worst_upper: f64,
}

/// Relative slack granted to both sides of the sandwich.
pub const SANDWICH_SLACK: f64 = 1e-10;

pub fn nikolskii_sandwich<P: Univariate>(corpus: &[P], s: f64) -> Result<SandwichCheck> {
    let max_deg = corpus.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let budget = (s.ceil() as usize * max_deg).div_ceil(2).max(DEFAULT_BUDGET);
    let mu = Measure::lebesgue(budget);
    let mut out = SandwichCheck { s, checked: 0, lower_violations: 0, upper_violations: 0, worst_lower: 0.0, worst_upper: 0.0 };
    for p in corpus {
        let Some(n) = p.degree().filter(|&n| n >= 1) else { continue };
        let (lp, sup) = (lp_norm(p, &mu, s)?, sup_uni(p, &CompactSet::unit_interval())?);
        let factor = (2.0 * (s + 1.0) * (n * n) as f64).powf(1.0 / s);
        out.checked += 1;
        out.lower_violations += usize::from(lp > sup * (1.0 + SANDWICH_SLACK));
        out.upper_violations += usize::from(sup > factor * lp * (1.0 + SANDWICH_SLACK));
        out.worst_lower = out.worst_lower.max(lp / sup);
        out.worst_upper = out.worst_upper.max(sup / (factor * lp));
    }
    Ok(out)
}
