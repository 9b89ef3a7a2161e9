//! Lower bounds on Markov factors by candidate search and coordinate ascent.

use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::operator::Operator;
use crate::norms::{CompactSet, NormSpec};
use crate::polycore::families::{derive_seed, rng};
use crate::polycore::{ChebPoly, MultiPoly, UniPoly, Univariate};
use crate::scalar::C64;

pub const DEFAULT_RANDOM_CANDIDATES: usize = 64;
pub const DEFAULT_ASCENT_ROUNDS: usize = 200;
const MIN_STEP: f64 = 1e-9;
/// Minimum gain of the log ratio for an ascent move to count.
const MIN_GAIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub seed: u64,
    pub random_candidates: usize,
    pub ascent_rounds: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { seed: 0, random_candidates: DEFAULT_RANDOM_CANDIDATES, ascent_rounds: DEFAULT_ASCENT_ROUNDS }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub factor: f64,
    /// Candidate the best ratio started from, with `+ascent` if ascent improved it.
    pub witness_id: String,
    pub witness: ChebPoly,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Basis {
    Chebyshev,
    Monomial,
}

fn basis_for(q: &NormSpec) -> Basis {
    let complex = |set: &CompactSet| matches!(set, CompactSet::Disk { .. }) || !set.is_real();
    match q {
        NormSpec::Qms { .. } => Basis::Monomial,
        NormSpec::Sup { set } | NormSpec::TaylorDisk { set, .. } | NormSpec::SupPlusLp { set, .. } if complex(set) => {
            Basis::Monomial
        }
        _ => Basis::Chebyshev,
    }
}

impl Basis {
    fn poly(self, c: &[f64]) -> ChebPoly {
        match self {
            Basis::Chebyshev => ChebPoly::from_real(c),
            Basis::Monomial => ChebPoly::from_monomial(&UniPoly::new(c.iter().map(|&x| C64::new(x, 0.0)).collect())),
        }
    }

    fn coords(self, p: &ChebPoly, n: usize) -> Vec<f64> {
        let raw: Vec<C64> = match self {
            Basis::Chebyshev => p.coeffs().to_vec(),
            Basis::Monomial => p.monomial_coeffs(),
        };
        (0..=n).map(|j| raw.get(j).map_or(0.0, |c| c.re)).collect()
    }
}

/// `ln q(op p) - ln q(p)`; `-inf` when the image vanishes.
fn log_ratio(op: &Operator, q: &NormSpec, p: &ChebPoly) -> Result<f64> {
    let base = q.ln_eval(p)?;
    if base == f64::NEG_INFINITY {
        return Ok(f64::NEG_INFINITY);
    }
    let image = op.apply_uni(p)?;
    if image.degree().is_none() {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(q.ln_eval(&image)? - base)
}

/// Best ratio `q(op P) / q(P)` found over `deg P <= n`; a lower bound on
/// the Markov factor. Candidates are `T_n`, `x^n`, the normalized Legendre
/// polynomial, `U_n` (extremal for weighted sup norms) and seeded random
/// coefficient vectors; the best one is polished by coordinate ascent with
/// step halving.
pub fn markov_factor_search(n: usize, op: &Operator, q: &NormSpec, cfg: &SearchConfig) -> Result<SearchResult> {
    if cfg.random_candidates + cfg.ascent_rounds == 0 {
        return Err(Error::InvalidParameter("search budget must be at least 1".into()));
    }
    if q.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, got: q.dim() });
    }
    let basis = basis_for(q);
    let mut candidates: Vec<(String, Vec<f64>)> = vec![
        (format!("chebyshev:{n}"), basis.coords(&ChebPoly::chebyshev_t(n), n)),
        (format!("monomial:{n}"), basis.coords(&ChebPoly::monomial(n), n)),
        (format!("legendre:{n}"), basis.coords(&ChebPoly::legendre_normalized(n), n)),
        (format!("chebyshev_u:{n}"), basis.coords(&ChebPoly::chebyshev_u(n), n)),
    ];
    let mut r = rng(derive_seed(cfg.seed, &[n as u64, op.order()? as u64]));
    for j in 0..cfg.random_candidates {
        let c: Vec<f64> = (0..=n).map(|_| StandardNormal.sample(&mut r)).collect();
        candidates.push((format!("random:{j}"), c));
    }

    let mut best: Option<(f64, String, Vec<f64>)> = None;
    for (id, c) in candidates {
        let v = log_ratio(op, q, &basis.poly(&c))?;
        if best.as_ref().is_none_or(|b| v > b.0) {
            best = Some((v, id, c));
        }
    }
    let (mut value, id, mut c) = best.expect("fixed candidates are present");
    if value == f64::NEG_INFINITY {
        // the operator annihilates P_n
        return Ok(SearchResult { factor: 0.0, witness_id: id, witness: basis.poly(&c) });
    }

    let scale = c.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    c.iter_mut().for_each(|x| *x /= scale);
    let start = value;
    let mut step = 0.5;
    for _ in 0..cfg.ascent_rounds {
        if step < MIN_STEP {
            break;
        }
        let mut improved = false;
        for j in 0..c.len() {
            for sign in [1.0, -1.0] {
                let mut trial = c.clone();
                trial[j] += sign * step;
                let v = log_ratio(op, q, &basis.poly(&trial))?;
                if v > value + MIN_GAIN {
                    value = v;
                    c = trial;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    let witness_id = if value > start + MIN_GAIN { format!("{id}+ascent") } else { id };
    Ok(SearchResult { factor: value.exp(), witness_id, witness: basis.poly(&c) })
}

/// Best ratio `q(op P) / q(P)` over a fixed corpus of multivariate polynomials.
/// Returns `(factor, witness id)`; zero when the operator annihilates every member.
pub fn markov_factor_corpus(op: &Operator, q: &NormSpec, corpus: &[(String, MultiPoly<C64>)]) -> Result<(f64, String)> {
    let mut best = (0.0, corpus.first().map(|c| c.0.clone()).unwrap_or_default());
    for (id, p) in corpus {
        let base = q.eval_multi(p)?;
        if base == 0.0 {
            continue;
        }
        let image = op.apply_multi(p)?;
        let ratio = if image.is_zero() { 0.0 } else { q.eval_multi(&image)? / base };
        if ratio > best.0 {
            best = (ratio, id.clone());
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_interval_small_degrees() {
        let q = NormSpec::sup_unit();
        let cfg = SearchConfig::default();
        let d1 = Operator::deriv(1);
        let r1 = markov_factor_search(1, &d1, &q, &cfg).unwrap();
        assert!((r1.factor - 1.0).abs() < 1e-9);
        let r2 = markov_factor_search(2, &d1, &q, &cfg).unwrap();
        assert!(r2.factor >= 4.0 - 1e-9 && r2.factor < 4.0 + 1e-6, "{}", r2.factor);
        assert_eq!(markov_factor_search(3, &Operator::deriv(0), &q, &cfg).unwrap().factor, 1.0);
        assert_eq!(markov_factor_search(0, &d1, &q, &cfg).unwrap().factor, 0.0);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let q = NormSpec::sup_unit();
        let cfg = SearchConfig { seed: 9, random_candidates: 8, ascent_rounds: 20 };
        let a = markov_factor_search(5, &Operator::deriv(2), &q, &cfg).unwrap();
        let b = markov_factor_search(5, &Operator::deriv(2), &q, &cfg).unwrap();
        assert_eq!(a, b);
    }
}
