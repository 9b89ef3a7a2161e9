//! The norm families and their JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::lp::lp_norm;
use crate::norms::measure::Measure;
use crate::norms::qms::{qms_ln_norm, RationalParam};
use crate::norms::sets::{CompactSet, Interval, RegionPredicate};
use crate::norms::sup::{max_over_region, sup_interval_weighted, sup_multi, sup_uni};
use crate::polycore::{MultiPoly, Univariate};
use crate::scalar::C64;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NormSpec {
    Sup {
        set: CompactSet,
    },
    Lp {
        measure: Measure,
        s: f64,
    },
    /// `||P||_E + ||P||_{L^s(μ)}`.
    SupPlusLp {
        set: CompactSet,
        measure: Measure,
        s: f64,
    },
    /// `sup |P(x)| (1 - |x|²)^α` on `[-1, 1]`, or on the unit disk of `R²`
    /// when `set` is a sampled `unit_disk` region.
    Schur {
        alpha: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        set: Option<CompactSet>,
    },
    Qms {
        m: RationalParam,
        s: u32,
    },
    /// `Σ_k r^k / k! · ||P^{(k)}||_E`.
    TaylorDisk {
        set: CompactSet,
        r: f64,
    },
    /// `||P||_E + ||∂P/∂x_j||_E` with a 0-based axis `j`.
    MixedDeriv {
        set: CompactSet,
        axis: usize,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum NormSpecWire {
    Sup { set: CompactSet },
    Lp { measure: Measure, s: f64 },
    SupPlusLp { set: CompactSet, measure: Measure, s: f64 },
    Schur { alpha: f64, #[serde(default)] set: Option<CompactSet> },
    Qms { m: RationalParam, s: u32 },
    TaylorDisk { set: CompactSet, r: f64 },
    MixedDeriv { set: CompactSet, axis: usize },
}

impl<'de> Deserialize<'de> for NormSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = match NormSpecWire::deserialize(d)? {
            NormSpecWire::Sup { set } => NormSpec::Sup { set },
            NormSpecWire::Lp { measure, s } => NormSpec::Lp { measure, s },
            NormSpecWire::SupPlusLp { set, measure, s } => NormSpec::SupPlusLp { set, measure, s },
            NormSpecWire::Schur { alpha, set } => NormSpec::Schur { alpha, set },
            NormSpecWire::Qms { m, s } => NormSpec::Qms { m, s },
            NormSpecWire::TaylorDisk { set, r } => NormSpec::TaylorDisk { set, r },
            NormSpecWire::MixedDeriv { set, axis } => NormSpec::MixedDeriv { set, axis },
        };
        spec.validate().map_err(serde::de::Error::custom)?;
        Ok(spec)
    }
}

impl NormSpec {
    pub fn sup_unit() -> Self {
        NormSpec::Sup { set: CompactSet::unit_interval() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            NormSpec::Lp { s, .. } | NormSpec::SupPlusLp { s, .. } if !(*s >= 1.0 && s.is_finite()) => {
                bad(format!("Lp exponent s must be >= 1, got {s}"))
            }
            NormSpec::Schur { alpha, .. } if !(*alpha > 0.0 && alpha.is_finite()) => {
                bad(format!("Schur exponent must be positive, got {alpha}"))
            }
            NormSpec::Schur { set: Some(set), .. } => match set {
                CompactSet::Interval(iv) if *iv == Interval::unit() => Ok(()),
                CompactSet::Region2D(r) if r.predicate() == RegionPredicate::UnitDisk => Ok(()),
                _ => bad("Schur norm is defined on [-1, 1] or the sampled unit disk".into()),
            },
            NormSpec::Qms { m, s } => {
                if m.to_f64() <= 0.0 {
                    bad(format!("q_(m,s) needs m > 0, got {m}"))
                } else if *s == 0 {
                    bad("q_(m,s) needs s >= 1".into())
                } else {
                    Ok(())
                }
            }
            NormSpec::TaylorDisk { r, set } => {
                if !(*r > 0.0 && r.is_finite()) {
                    bad(format!("Taylor disk radius must be positive, got {r}"))
                } else if set.dim() != 1 {
                    bad("Taylor disk norm needs a one-dimensional set".into())
                } else {
                    Ok(())
                }
            }
            NormSpec::MixedDeriv { set, axis } if *axis >= set.dim() => {
                bad(format!("axis {axis} out of range for a {}-dimensional set", set.dim()))
            }
            _ => Ok(()),
        }
    }

    /// Number of variables of the polynomials this norm applies to.
    pub fn dim(&self) -> usize {
        match self {
            NormSpec::Sup { set } | NormSpec::MixedDeriv { set, .. } => set.dim(),
            NormSpec::Schur { set: Some(set), .. } => set.dim(),
            _ => 1,
        }
    }

    /// The measure when this is an `L²` norm, whose Markov factors are exact.
    pub fn l2_measure(&self) -> Option<&Measure> {
        match self {
            NormSpec::Lp { measure, s } if *s == 2.0 => Some(measure),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormSpec::Sup { .. } => "sup",
            NormSpec::Lp { .. } => "lp",
            NormSpec::SupPlusLp { .. } => "sup_plus_lp",
            NormSpec::Schur { .. } => "schur",
            NormSpec::Qms { .. } => "qms",
            NormSpec::TaylorDisk { .. } => "taylor_disk",
            NormSpec::MixedDeriv { .. } => "mixed_deriv",
        }
    }

    /// Norm of a univariate polynomial.
    pub fn eval<P: Univariate>(&self, p: &P) -> Result<f64> {
        match self {
            NormSpec::Qms { .. } => {
                let v = self.ln_eval(p)?.exp();
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::PrecisionOverflow("q_{m,s} norm; use ln_eval or exact mode"))
                }
            }
            _ => self.eval_direct(p),
        }
    }

    /// `ln q(p)`, finite for norms whose values overflow doubles.
    pub fn ln_eval<P: Univariate>(&self, p: &P) -> Result<f64> {
        match self {
            NormSpec::Qms { m, s } => Ok(qms_ln_norm(p, m.to_f64(), *s)),
            _ => Ok(self.eval_direct(p)?.ln()),
        }
    }

    fn eval_direct<P: Univariate>(&self, p: &P) -> Result<f64> {
        match self {
            NormSpec::Sup { set } => sup_uni(p, set),
            NormSpec::Lp { measure, s } => lp_norm(p, measure, *s),
            NormSpec::SupPlusLp { set, measure, s } => Ok(sup_uni(p, set)? + lp_norm(p, measure, *s)?),
            NormSpec::Schur { alpha, set } => match set {
                None | Some(CompactSet::Interval(_)) => Ok(schur_interval(p, *alpha)),
                Some(other) => Err(Error::DimensionMismatch { expected: other.dim(), got: 1 }),
            },
            NormSpec::Qms { .. } => unreachable!("handled in eval"),
            NormSpec::TaylorDisk { set, r } => taylor_disk(p, set, *r),
            NormSpec::MixedDeriv { set, axis } => {
                if *axis != 0 || set.dim() != 1 {
                    return Err(Error::DimensionMismatch { expected: set.dim(), got: 1 });
                }
                Ok(sup_uni(p, set)? + sup_uni(&p.derivative(1), set)?)
            }
        }
    }

    /// Norm of a multivariate polynomial. One-variable inputs fall back to [`NormSpec::eval`].
    pub fn eval_multi(&self, p: &MultiPoly<C64>) -> Result<f64> {
        match self {
            NormSpec::Sup { set } => sup_multi(p, set),
            NormSpec::MixedDeriv { set, axis } => Ok(sup_multi(p, set)? + sup_multi(&p.partial(*axis, 1)?, set)?),
            NormSpec::Schur { alpha, set: Some(CompactSet::Region2D(region)) } => {
                if p.nvars() != 2 {
                    return Err(Error::DimensionMismatch { expected: 2, got: p.nvars() });
                }
                let a = *alpha;
                max_over_region(p, region, &|v, x, y| v * (1.0 - x * x - y * y).max(0.0).powf(a))
            }
            _ => {
                if p.nvars() != 1 {
                    return Err(Error::DimensionMismatch { expected: 1, got: p.nvars() });
                }
                self.eval(&p.to_uni()?)
            }
        }
    }
}

fn schur_interval<P: Univariate>(p: &P, alpha: f64) -> f64 {
    let extra = (2.0 * alpha).ceil() as usize;
    sup_interval_weighted(p, &Interval::unit(), extra, &|x| (1.0 - x * x).max(0.0).powf(alpha)).value
}

fn taylor_disk<P: Univariate>(p: &P, set: &CompactSet, r: f64) -> Result<f64> {
    let Some(d) = p.degree() else {
        return Ok(0.0);
    };
    let mut total = 0.0;
    let mut coef = 1.0;
    let mut dk = p.clone();
    for k in 0..=d {
        if k > 0 {
            coef *= r / k as f64;
            dk = dk.derivative(1);
        }
        total += coef * sup_uni(&dk, set)?;
    }
    Ok(total)
}
