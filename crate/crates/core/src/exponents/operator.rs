//! Differential operators whose Markov factors are tabulated.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::{dir_derivative, hdop_apply, ChebPoly, DirOp, MultiPoly, Univariate};
use crate::scalar::C64;

/// One term `c · D^α` of a homogeneous operator `H(D)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HopTerm {
    pub alpha: Vec<u32>,
    pub c: f64,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Operator {
    /// `∂^k / ∂x_axis^k`, 0-based axis.
    Deriv {
        k: u32,
        #[serde(default)]
        axis: usize,
    },
    /// `k`-th power of the directional derivative along `v`.
    Dirop {
        v: Vec<f64>,
        #[serde(default = "one")]
        k: u32,
    },
    /// Homogeneous operator `H(D_1, …, D_N)`.
    Hop {
        #[serde(rename = "H")]
        h: Vec<HopTerm>,
    },
}

impl Operator {
    pub fn deriv(k: u32) -> Self {
        Operator::Deriv { k, axis: 0 }
    }

    /// `Σ_j ∂^{2l} / ∂x_j^{2l}` in `nvars` variables.
    pub fn pure_power_sum(nvars: usize, l: u32) -> Self {
        let h = (0..nvars)
            .map(|j| {
                let mut alpha = vec![0; nvars];
                alpha[j] = 2 * l;
                HopTerm { alpha, c: 1.0 }
            })
            .collect();
        Operator::Hop { h }
    }

    /// Total differentiation order.
    pub fn order(&self) -> Result<u32> {
        match self {
            Operator::Deriv { k, .. } | Operator::Dirop { k, .. } => Ok(*k),
            Operator::Hop { .. } => Ok(self.hop_poly()?.homogeneous_degree().unwrap_or(0) as u32),
        }
    }

    /// Identifier used in the `op` column of tables. Contains no commas.
    pub fn descriptor(&self) -> String {
        match self {
            Operator::Deriv { k, axis: 0 } => format!("deriv:{k}"),
            Operator::Deriv { k, axis } => format!("deriv:{k}@{axis}"),
            Operator::Dirop { v, k } => {
                format!("dirop:{k}:{}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"))
            }
            Operator::Hop { h } => {
                let terms: Vec<String> = h
                    .iter()
                    .map(|t| format!("{}*D[{}]", t.c, t.alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(";")))
                    .collect();
                format!("hop:{}", terms.join("+"))
            }
        }
    }

    /// Number of variables the operator acts on, when fixed by its data.
    pub fn dim(&self) -> Option<usize> {
        match self {
            Operator::Deriv { .. } => None,
            Operator::Dirop { v, .. } => Some(v.len()),
            Operator::Hop { h } => h.first().map(|t| t.alpha.len()),
        }
    }

    fn hop_poly(&self) -> Result<MultiPoly<C64>> {
        let Operator::Hop { h } = self else { unreachable!() };
        let nvars = h.first().map(|t| t.alpha.len()).ok_or(Error::NonHomogeneousOperator)?;
        let poly = MultiPoly::from_terms(nvars, h.iter().map(|t| (t.alpha.clone(), C64::new(t.c, 0.0))))?;
        match poly.homogeneous_degree() {
            Some(k) if k >= 1 => Ok(poly),
            _ => Err(Error::NonHomogeneousOperator),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Operator::Deriv { .. } => Ok(()),
            Operator::Dirop { v, .. } => DirOp::new(v.iter().map(|&x| C64::new(x, 0.0)).collect()).map(|_| ()),
            Operator::Hop { .. } => self.hop_poly().map(|_| ()),
        }
    }

    pub fn apply_uni(&self, p: &ChebPoly) -> Result<ChebPoly> {
        if self.dim().is_some_and(|d| d != 1) {
            return Err(Error::DimensionMismatch { expected: 1, got: self.dim().unwrap_or(0) });
        }
        match self {
            Operator::Deriv { k, axis } => {
                if *axis != 0 {
                    return Err(Error::DimensionMismatch { expected: 1, got: axis + 1 });
                }
                Ok(p.derivative(*k as usize))
            }
            Operator::Dirop { v, k } => {
                self.validate()?;
                Ok(p.derivative(*k as usize).scale_real(v[0].powi(*k as i32)))
            }
            Operator::Hop { .. } => {
                let h = self.hop_poly()?;
                let mut out = ChebPoly::zero();
                for (alpha, c) in h.terms() {
                    out = Univariate::add(&out, &p.derivative(alpha[0] as usize).scale(*c));
                }
                Ok(out)
            }
        }
    }

    pub fn apply_multi(&self, p: &MultiPoly<C64>) -> Result<MultiPoly<C64>> {
        match self {
            Operator::Deriv { k, axis } => p.partial(*axis, *k),
            Operator::Dirop { v, k } => {
                let d = DirOp::new(v.iter().map(|&x| C64::new(x, 0.0)).collect())?;
                dir_derivative(p, &d, *k)
            }
            Operator::Hop { .. } => hdop_apply(&self.hop_poly()?, p),
        }
    }
}
