//! Numerical shadows of the closed-form exponent statements.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exponents::factor::factor_table;
use crate::exponents::fit::{fit_power_law, ExponentFit};
use crate::exponents::operator::Operator;
use crate::exponents::search::{markov_factor_corpus, SearchConfig};
use crate::exponents::table::{Certification, MarkovTable, TableRow};
use crate::norms::{linear_fit, qms_norm_exact, sup_uni, CompactSet, NormSpec, RationalParam};
use crate::orthopoly::PolyFamily;
use crate::polycore::families::{derive_seed, product_chebyshev, random_cheb, rng};
use crate::polycore::{ChebPoly, MultiPoly, UniPoly, Univariate};
use crate::scalar::{exact_real, factorial, C64};

/// Ratio `||P̂_n^{(k)}||_E / ||P̂_n||_E` per degree and its power-law fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyExponent {
    pub k: u32,
    pub rows: Vec<(usize, f64)>,
    pub fit: ExponentFit,
}

/// Family estimator of the order-`k` exponent on `E`.
pub fn mk_hat(family: &dyn PolyFamily, set: &CompactSet, k: u32, degrees: &[usize]) -> Result<FamilyExponent> {
    let rows = degrees
        .par_iter()
        .map(|&n| {
            let p = family.member(n)?;
            if p.degree() != Some(n) {
                return Err(Error::InvalidParameter(format!("family member {n} has degree {:?}", p.degree())));
            }
            let base = sup_uni(&p, set)?;
            if base == 0.0 {
                return Err(Error::InvalidParameter(format!("family member {n} has zero norm")));
            }
            Ok((n, sup_uni(&p.derivative(k as usize), set)? / base))
        })
        .collect::<Result<Vec<_>>>()?;
    let pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.0 >= 1).map(|&(n, f)| (n as f64, f)).collect();
    Ok(FamilyExponent { k, fit: fit_power_law(&pts, None)?, rows })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QmsExponent {
    pub m: RationalParam,
    pub s: u32,
    pub k: u32,
    /// `s · m · ⌈k / s⌉`, exactly.
    pub closed_form: RationalParam,
    /// Slope of `ln R(N)` against `ln N` for `R(N) = q((x^N)^{(k)}) / q(x^N)`.
    pub fitted_slope: f64,
    pub degrees: Vec<u64>,
}

pub const QMS_FIT_RANGE: [u64; 2] = [1024, 4096];
const QMS_FIT_POINTS: usize = 12;

/// Closed form of the order-`k` exponent of `q_{m,s}` and its monomial check:
/// the exact norms of `x^N` and its `k`-th derivative for `N = s·n` at 12
/// log-spaced degrees in [`QMS_FIT_RANGE`].
pub fn qms_exact_mk(m: &RationalParam, s: u32, k: u32) -> Result<QmsExponent> {
    if s == 0 || k == 0 {
        return Err(Error::InvalidParameter("q_{m,s} exponent needs s >= 1 and k >= 1".into()));
    }
    let closed = m.exact() * BigRational::from_integer(BigInt::from(s * k.div_ceil(s)));
    let (lo, hi) = (QMS_FIT_RANGE[0] as f64, QMS_FIT_RANGE[1] as f64);
    let mut degrees: Vec<u64> = (0..QMS_FIT_POINTS)
        .map(|i| {
            let t = lo * (hi / lo).powf(i as f64 / (QMS_FIT_POINTS - 1) as f64);
            (t / s as f64).round() as u64 * s as u64
        })
        .collect();
    degrees.dedup();
    let ln_ratios = degrees
        .par_iter()
        .map(|&big_n| {
            let p = UniPoly::monomial(big_n as usize, exact_real(BigRational::from_integer(1.into())));
            let falling = BigRational::new(factorial(big_n), factorial(big_n - k as u64));
            let dp = UniPoly::monomial((big_n - k as u64) as usize, exact_real(falling));
            Ok(qms_norm_exact(&dp, m.exact(), s)?.ln() - qms_norm_exact(&p, m.exact(), s)?.ln())
        })
        .collect::<Result<Vec<f64>>>()?;
    let xs: Vec<f64> = degrees.iter().map(|&n| (n as f64).ln()).collect();
    let (_, slope) = linear_fit(&xs, &ln_ratios);
    Ok(QmsExponent {
        m: m.clone(),
        s,
        k,
        closed_form: RationalParam::new(closed),
        fitted_slope: slope,
        degrees,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaplacianReport {
    pub l: u32,
    pub gradient: ExponentFit,
    pub operator: ExponentFit,
    pub ratio: f64,
    pub predicted: f64,
    pub gradient_table: MarkovTable,
    pub operator_table: MarkovTable,
}

/// Corpus `T_a(x) T_b(y)` with `a + b = n`.
fn product_corpus(n: usize) -> Vec<(String, MultiPoly<C64>)> {
    (0..=n).map(|a| (format!("cheb2:{a}:{}", n - a), product_chebyshev(&[a, n - a]))).collect()
}

/// Exponent of `Σ_j ∂^{2l}/∂x_j^{2l}` against the gradient exponent on a
/// planar set, over product Chebyshev polynomials of degree `1..=degmax`.
pub fn laplacian_vs_gradient_check(set: &CompactSet, degmax: usize, l: u32) -> Result<LaplacianReport> {
    if set.dim() != 2 || !set.is_real() {
        return Err(Error::InvalidParameter("the Laplacian check needs a real planar set".into()));
    }
    if l == 0 {
        return Err(Error::InvalidParameter("operator order 2l needs l >= 1".into()));
    }
    let q = NormSpec::Sup { set: set.clone() };
    let op = Operator::pure_power_sum(2, l);
    let degrees: Vec<usize> = (1..=degmax).collect();
    let rows = degrees
        .par_iter()
        .map(|&n| {
            let corpus = product_corpus(n);
            let mut grad = (0.0, String::new());
            for axis in 0..2 {
                let g = markov_factor_corpus(&Operator::Deriv { k: 1, axis }, &q, &corpus)?;
                if g.0 > grad.0 {
                    grad = g;
                }
            }
            let lap = markov_factor_corpus(&op, &q, &corpus)?;
            Ok((
                TableRow { n, factor: grad.0, witness_id: grad.1 },
                TableRow { n, factor: lap.0, witness_id: lap.1 },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (grad_rows, op_rows): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
    let gradient_table = MarkovTable::new("gradient".into(), grad_rows, Certification::LowerBound, Some(q.clone()))?;
    let operator_table = MarkovTable::new(op.descriptor(), op_rows, Certification::LowerBound, Some(q))?;
    let gradient = gradient_table.fit(None)?;
    let operator = operator_table.fit(None)?;
    Ok(LaplacianReport {
        l,
        ratio: operator.slope_ls / gradient.slope_ls,
        predicted: 2.0 * l as f64,
        gradient,
        operator,
        gradient_table,
        operator_table,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FloorReport {
    pub k: u32,
    /// Largest `|ln q(x^n) - n ln q(x)|` over the degrees.
    pub spectral_deviation: f64,
    /// Fit of `q((x^n)^{(k)}) / q(x^n)`.
    pub monomial_fit: Option<ExponentFit>,
    /// Fit of the searched Markov factors.
    pub search_fit: Option<ExponentFit>,
    pub passes: bool,
}

pub const SPECTRAL_TOLERANCE: f64 = 1e-8;
pub const FLOOR_SLACK: f64 = 0.05;

/// Checks that a norm spectral on monomials has order-`k` exponent at
/// least `k`: the chain `x^n` alone forces it.
pub fn spectral_exponent_floor(q: &NormSpec, k: u32, degrees: &[usize], cfg: &SearchConfig) -> Result<FloorReport> {
    let ln_x = q.ln_eval(&ChebPoly::monomial(1))?;
    let mut deviation = 0.0f64;
    for &n in degrees {
        deviation = deviation.max((q.ln_eval(&ChebPoly::monomial(n))? - n as f64 * ln_x).abs());
    }
    if deviation > SPECTRAL_TOLERANCE {
        return Err(Error::NotSpectral(format!("{} deviates by {deviation:e} on monomials", q.name())));
    }
    if k == 0 {
        return Ok(FloorReport { k, spectral_deviation: deviation, monomial_fit: None, search_fit: None, passes: true });
    }
    let op = Operator::deriv(k);
    let mono: Vec<(f64, f64)> = degrees
        .iter()
        .filter(|&&n| n >= k as usize)
        .map(|&n| {
            let p = ChebPoly::monomial(n);
            Ok((n as f64, (q.ln_eval(&op.apply_uni(&p)?)? - q.ln_eval(&p)?).exp()))
        })
        .collect::<Result<_>>()?;
    let monomial_fit = fit_power_law(&mono, None)?;
    let search_fit = factor_table(q, &op, degrees, cfg)?.fit(None)?;
    let passes = search_fit.slope_ls / k as f64 >= 1.0 - FLOOR_SLACK && monomial_fit.slope_ls / k as f64 >= 1.0 - FLOOR_SLACK;
    Ok(FloorReport {
        k,
        spectral_deviation: deviation,
        monomial_fit: Some(monomial_fit),
        search_fit: Some(search_fit),
        passes,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub violations: usize,
    /// Largest `lhs / rhs` over the corpus.
    pub worst_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BernsteinSchurReport {
    pub corpus_size: usize,
    pub inequalities: Vec<InequalityCheck>,
    pub schur_fit: ExponentFit,
}

pub const INEQUALITY_SLACK: f64 = 1e-8;
pub const RANDOM_PER_DEGREE: usize = 4;

/// Bernstein `||√(1-x²) p'|| <= n ||p||`, Schur `||p|| <= (n+1) ||√(1-x²) p||`
/// and their product, the Markov inequality with factor `n(n+1)` for the
/// Schur norm, on `T_n` and seeded random polynomials of the corpus degrees;
/// plus the Markov exponent of that Schur norm fitted over `fit_degrees`.
pub fn bernstein_schur_check(degrees: &[usize], fit_degrees: &[usize], cfg: &SearchConfig) -> Result<BernsteinSchurReport> {
    let sup = NormSpec::sup_unit();
    let schur = NormSpec::Schur { alpha: 0.5, set: None };
    let mut corpus: Vec<(usize, ChebPoly)> = vec![(0, ChebPoly::from_real(&[1.0]))];
    for &n in degrees {
        corpus.push((n, ChebPoly::chebyshev_t(n)));
        let mut r = rng(derive_seed(cfg.seed, &[n as u64, 0xb5]));
        for _ in 0..RANDOM_PER_DEGREE {
            corpus.push((n, random_cheb(&mut r, n)));
        }
    }
    let sides = corpus
        .par_iter()
        .map(|(n, p)| {
            let nf = *n as f64;
            let (p_sup, p_schur) = (sup.eval(p)?, schur.eval(p)?);
            let dp_schur = schur.eval(&p.derivative(1))?;
            Ok([(dp_schur, nf * p_sup), (p_sup, (nf + 1.0) * p_schur), (dp_schur, nf * (nf + 1.0) * p_schur)])
        })
        .collect::<Result<Vec<_>>>()?;
    let names = ["bernstein", "schur", "schur_markov"];
    let inequalities = (0..3)
        .map(|i| {
            let mut check = InequalityCheck { name: names[i].into(), violations: 0, worst_ratio: 0.0 };
            for s in &sides {
                let (lhs, rhs) = s[i];
                if lhs > rhs * (1.0 + INEQUALITY_SLACK) + f64::MIN_POSITIVE {
                    check.violations += 1;
                }
                if rhs > 0.0 {
                    check.worst_ratio = check.worst_ratio.max(lhs / rhs);
                }
            }
            check
        })
        .collect();
    let schur_fit = factor_table(&schur, &Operator::deriv(1), fit_degrees, cfg)?.fit(None)?;
    Ok(BernsteinSchurReport { corpus_size: corpus.len(), inequalities, schur_fit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::families::Family;

    #[test]
    fn chebyshev_family_exponent() {
        let degrees: Vec<usize> = (1..=64).collect();
        let r = mk_hat(&Family::ChebyshevT, &CompactSet::unit_interval(), 1, &degrees).unwrap();
        assert!((r.fit.slope_ls - 2.0).abs() < 1e-9);
        assert!((r.rows[9].1 - 100.0).abs() < 1e-9);
    }

    #[test]
    fn qms_closed_forms() {
        let one = RationalParam::from_ratio(1, 1);
        assert_eq!(qms_exact_mk(&one, 2, 1).unwrap().closed_form, RationalParam::from_ratio(2, 1));
        let r = qms_exact_mk(&RationalParam::from_ratio(2, 1), 3, 4).unwrap();
        assert_eq!(r.closed_form, RationalParam::from_ratio(12, 1));
        assert!((r.fitted_slope - 12.0).abs() < 0.1, "{}", r.fitted_slope);
        let half = qms_exact_mk(&RationalParam::from_ratio(1, 2), 3, 3).unwrap();
        assert!((half.fitted_slope - 1.5).abs() < 0.1, "{}", half.fitted_slope);
    }

    #[test]
    fn floor_on_interval_and_disk() {
        let degrees: Vec<usize> = (2..=16).collect();
        let cfg = SearchConfig { seed: 1, random_candidates: 4, ascent_rounds: 10 };
        let r = spectral_exponent_floor(&NormSpec::sup_unit(), 1, &degrees, &cfg).unwrap();
        assert!(r.passes && (r.search_fit.unwrap().slope_ls - 2.0).abs() < 0.05);
        let disk = NormSpec::Sup { set: CompactSet::disk(C64::new(0.0, 0.0), 1.0).unwrap() };
        let r = spectral_exponent_floor(&disk, 1, &degrees, &cfg).unwrap();
        assert!(r.passes && (r.monomial_fit.unwrap().slope_ls - 1.0).abs() < 0.05);
        assert!(spectral_exponent_floor(&NormSpec::sup_unit(), 0, &degrees, &cfg).unwrap().passes);
    }
}
