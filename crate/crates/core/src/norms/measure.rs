//! Probability measures on an interval and their Gauss rules.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::sets::Interval;

/// Nodes in increasing order on `[-1, 1]` and weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Monic recurrence coefficients `(a_0..a_{n-1}, β_0..β_{n-1})` of the Jacobi
/// weight `(1-t)^α (1+t)^β` normalized to unit mass, so `β_0 = 1`.
pub fn jacobi_recurrence(alpha: f64, beta: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        let kf = k as f64;
        let ak = if alpha == beta {
            0.0
        } else if k == 0 {
            (beta - alpha) / (ab + 2.0)
        } else {
            (beta * beta - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        let bk = match k {
            0 => 1.0,
            1 => 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab)),
            _ => {
                let s = 2.0 * kf + ab;
                4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab) / (s * s * (s + 1.0) * (s - 1.0))
            }
        };
        a.push(ak);
        b.push(bk);
    }
    (a, b)
}

/// Golub–Welsch: Gauss rule with `n` nodes from monic recurrence coefficients
/// of a unit-mass measure.
pub fn golub_welsch(a: &[f64], b: &[f64]) -> Rule {
    let n = a.len();
    assert!(n >= 1 && b.len() >= n);
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        j[(i, i)] = a[i];
        if i + 1 < n {
            let off = b[i + 1].sqrt();
            j[(i, i + 1)] = off;
            j[(i + 1, i)] = off;
        }
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let total: f64 = pairs.iter().map(|p| p.1).sum();
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1 / total).collect(),
    }
}

/// `n`-point Gauss–Jacobi rule for the normalized weight `(1-t)^α (1+t)^β`.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> Rule {
    let (a, b) = jacobi_recurrence(alpha, beta, n);
    let mut rule = golub_welsch(&a, &b);
    if alpha == beta {
        // exact symmetry keeps odd moments at zero
        let n = rule.nodes.len();
        for i in 0..n / 2 {
            let x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
            let w = 0.5 * (rule.weights[n - 1 - i] + rule.weights[i]);
            rule.nodes[i] = -x;
            rule.nodes[n - 1 - i] = x;
            rule.weights[i] = w;
            rule.weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            rule.nodes[n / 2] = 0.0;
        }
    }
    rule
}

/// `∫_{-1}^{1} (1-t)^α (1+t)^β dt`.
pub fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    ((alpha + beta + 1.0) * std::f64::consts::LN_2 + libm::lgamma(alpha + 1.0) + libm::lgamma(beta + 1.0)
        - libm::lgamma(alpha + beta + 2.0))
    .exp()
}

#[derive(Clone, Debug, PartialEq)]
pub enum Weight {
    Lebesgue,
    /// `(1-t)^α (1+t)^β` in the coordinate `t ∈ [-1, 1]` of the support.
    Jacobi { alpha: f64, beta: f64 },
    /// Density samples on a uniform grid over the support, `4k + 1` of them.
    Tabulated(Vec<f64>),
}

const TABULATED_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_BUDGET: usize = 64;

/// A probability measure with a precomputed rule exact for polynomials of
/// degree `2 · budget + 1` (the `Tabulated` rule is composite, not exact).
#[derive(Clone, Debug, PartialEq)]
pub struct Measure {
    support: Interval,
    weight: Weight,
    budget: usize,
    rule: Rule,
}

impl Measure {
    pub fn new(support: Interval, weight: Weight, budget: usize) -> Result<Self> {
        if budget == 0 {
            return Err(Error::InvalidParameter("quadrature budget must be at least 1".into()));
        }
        let rule = match &weight {
            Weight::Lebesgue => gauss_jacobi(budget + 1, 0.0, 0.0),
            Weight::Jacobi { alpha, beta } => {
                if !(*alpha > -1.0 && *beta > -1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "Jacobi exponents must exceed -1, got ({alpha}, {beta})"
                    )));
                }
                gauss_jacobi(budget + 1, *alpha, *beta)
            }
            Weight::Tabulated(values) => tabulated_rule(values, budget)?,
        };
        let mass: f64 = rule.weights.iter().sum();
        debug_assert!((mass - 1.0).abs() < 1e-12);
        Ok(Self { support, weight, budget, rule })
    }

    /// Normalized Lebesgue measure `dx / 2` on `[-1, 1]`.
    pub fn lebesgue(budget: usize) -> Self {
        Self::new(Interval::unit(), Weight::Lebesgue, budget).expect("valid parameters")
    }

    pub fn jacobi(alpha: f64, beta: f64, budget: usize) -> Result<Self> {
        Self::new(Interval::unit(), Weight::Jacobi { alpha, beta }, budget)
    }

    pub fn support(&self) -> Interval {
        self.support
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Jacobi exponents `(α, β)` when the weight has that form.
    pub fn jacobi_params(&self) -> Option<(f64, f64)> {
        match self.weight {
            Weight::Lebesgue => Some((0.0, 0.0)),
            Weight::Jacobi { alpha, beta } => Some((alpha, beta)),
            Weight::Tabulated(_) => None,
        }
    }

    /// Rule nodes mapped to the support.
    pub fn nodes(&self) -> Vec<f64> {
        self.rule.nodes.iter().map(|&t| self.support.from_unit(t)).collect()
    }

    pub fn weights(&self) -> &[f64] {
        &self.rule.weights
    }

    /// The rule in the reference coordinate `t ∈ [-1, 1]`.
    pub fn unit_rule(&self) -> &Rule {
        &self.rule
    }

    pub fn total_mass(&self) -> f64 {
        self.rule.weights.iter().sum()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.rule
            .nodes
            .iter()
            .zip(&self.rule.weights)
            .map(|(&t, &w)| w * f(self.support.from_unit(t)))
            .sum()
    }
}

fn simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    (0..n)
        .map(|i| {
            let c = if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0 * values[i]
        })
        .collect()
}

fn tabulated_rule(values: &[f64], budget: usize) -> Result<Rule> {
    let len = values.len();
    if len < 5 || !(len - 1).is_multiple_of(4) {
        return Err(Error::InvalidParameter(format!(
            "tabulated weight needs 4k + 1 >= 5 samples, got {len}"
        )));
    }
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidParameter("tabulated weight must be finite and nonnegative".into()));
    }
    let nodes: Vec<f64> = (0..len).map(|i| -1.0 + 2.0 * i as f64 / (len - 1) as f64).collect();
    let full = simpson(values, 2.0 / (len - 1) as f64);
    let mass: f64 = full.iter().sum();
    if mass <= 0.0 {
        return Err(Error::InvalidParameter("tabulated weight has zero mass".into()));
    }
    // Self-consistency: Chebyshev moments on the full and the half grid.
    let half_values: Vec<f64> = values.iter().step_by(2).copied().collect();
    let half_nodes: Vec<f64> = nodes.iter().step_by(2).copied().collect();
    let half = simpson(&half_values, 4.0 / (len - 1) as f64);
    for j in 0..=2 * budget {
        let moment = |w: &[f64], x: &[f64]| -> f64 {
            w.iter().zip(x).map(|(w, &t)| w * (j as f64 * t.clamp(-1.0, 1.0).acos()).cos()).sum()
        };
        let dev = (moment(&full, &nodes) - moment(&half, &half_nodes)).abs() / mass;
        if dev > TABULATED_TOLERANCE {
            return Err(Error::InvalidParameter(format!(
                "tabulated weight is too coarse: moment {j} changes by {dev:e} between grids"
            )));
        }
    }
    Ok(Rule { nodes, weights: full.into_iter().map(|w| w / mass).collect() })
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum WeightWire {
    Lebesgue,
    Jacobi { alpha: f64, beta: f64 },
    Tabulated { values: Vec<f64> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureWire {
    #[serde(default = "Interval::unit")]
    support: Interval,
    #[serde(default = "lebesgue_wire")]
    weight: WeightWire,
    #[serde(default = "default_budget")]
    budget: usize,
}

fn lebesgue_wire() -> WeightWire {
    WeightWire::Lebesgue
}

fn default_budget() -> usize {
    DEFAULT_BUDGET
}

impl Serialize for Measure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let weight = match &self.weight {
            Weight::Lebesgue => WeightWire::Lebesgue,
            Weight::Jacobi { alpha, beta } => WeightWire::Jacobi { alpha: *alpha, beta: *beta },
            Weight::Tabulated(v) => WeightWire::Tabulated { values: v.clone() },
        };
        MeasureWire { support: self.support, weight, budget: self.budget }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Measure {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MeasureWire::deserialize(d)?;
        let weight = match w.weight {
            WeightWire::Lebesgue => Weight::Lebesgue,
            WeightWire::Jacobi { alpha, beta } => Weight::Jacobi { alpha, beta },
            WeightWire::Tabulated { values } => Weight::Tabulated(values),
        };
        Measure::new(w.support, weight, w.budget).map_err(serde::de::Error::custom)
    }
}
