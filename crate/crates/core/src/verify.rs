//! Named check suites with machine-readable reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::artifact::Mode;
use crate::error::{Error, Result};
use crate::exponents::{
    asymptotic_exponent, bernstein_schur_check, laplacian_vs_gradient_check, qms_closed_form, qms_exact_mk,
    spectral_exponent_floor, SearchConfig,
};
use crate::norms::{nikolskii_sandwich, qms_norm, qms_norm_exact, CompactSet, NormSpec, QmsExact, RationalParam};
use crate::polycore::families::{derive_seed, random_cheb, random_multi, random_multi_exact, rng};
use crate::polycore::{di_residual, ChebPoly, DirOp, UniPoly};
use crate::scalar::{exact_real, factorial, rational_to_f64, ExactC, Scalar, C64};

pub const SUITES: [&str; 7] = ["di", "qms", "nikolskii", "bernstein-schur", "laplacian", "floor", "all"];

pub const DI_CASES: usize = 200;
pub const DI_FLOAT_TOLERANCE: f64 = 1e-9;
pub const QMS_SLOPE_TOLERANCE: f64 = 0.1;
pub const NIKOLSKII_CASES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub measured: Value,
    pub expected: Value,
    pub tolerance: f64,
    /// How `measured` is compared with `expected`: `==`, `<=`, `>=` or `|-|<=`.
    pub relation: String,
}

impl Check {
    fn new(name: impl Into<String>, ok: bool, measured: Value, expected: Value, tolerance: f64, relation: &str) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self { name: name.into(), status, measured, expected, tolerance, relation: relation.into() }
    }

    pub fn exact(name: impl Into<String>, measured: Value, expected: Value) -> Self {
        let ok = measured == expected;
        Self::new(name, ok, measured, expected, 0.0, "==")
    }

    pub fn le(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(name, measured <= bound, json!(measured), json!(bound), 0.0, "<=")
    }

    pub fn ge(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        Self::new(name, measured >= bound, json!(measured), json!(bound), 0.0, ">=")
    }

    pub fn close(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let ok = (measured - expected).abs() <= tolerance;
        Self::new(name, ok, json!(measured), json!(expected), tolerance, "|-|<=")
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Runs one suite; `all` concatenates the others with their names as prefixes.
pub fn run_suite(name: &str, mode: Mode, seed: u64) -> Result<SuiteReport> {
    let checks = match name {
        "di" => di_suite(mode, seed)?,
        "qms" => qms_suite(mode)?,
        "nikolskii" => nikolskii_suite(seed)?,
        "bernstein-schur" => bernstein_schur_suite(seed)?,
        "laplacian" => laplacian_suite()?,
        "floor" => floor_suite(seed)?,
        "all" => {
            let mut all = Vec::new();
            for sub in SUITES.iter().filter(|s| **s != "all") {
                for mut c in run_suite(sub, mode, seed)?.checks {
                    c.name = format!("{sub}/{}", c.name);
                    all.push(c);
                }
            }
            all
        }
        other => return Err(Error::InvalidParameter(format!("unknown suite {other:?}; expected one of {SUITES:?}"))),
    };
    Ok(SuiteReport { suite: name.into(), checks })
}

fn small_rational(r: &mut impl Rng) -> BigRational {
    loop {
        let num: i64 = r.random_range(-5..=5);
        if num != 0 {
            return BigRational::new(BigInt::from(num), BigInt::from(r.random_range(1..=4i64)));
        }
    }
}

/// The directional identity on random multivariate polynomials with
/// `N <= 2`, degree `<= 6` and `k <= 4`.
fn di_suite(mode: Mode, seed: u64) -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for case in 0..DI_CASES {
        let mut r = rng(derive_seed(seed, &[case as u64, 0xd1]));
        let nvars = r.random_range(1..=2);
        let degree = r.random_range(0..=6);
        let k = r.random_range(1..=4u32);
        let residual = match mode {
            Mode::Float => {
                let f = random_multi(&mut r, nvars, degree);
                let v = (0..nvars)
                    .map(|_| C64::new(r.sample(StandardNormal), r.sample(StandardNormal)))
                    .collect();
                di_residual(&f, &DirOp::new(v)?, k)?
            }
            Mode::Exact => {
                let f = random_multi_exact(&mut r, nvars, degree);
                let v: Vec<ExactC> = (0..nvars).map(|_| exact_real(small_rational(&mut r))).collect();
                di_residual(&f, &DirOp::new(v)?, k)?
            }
        };
        let bound = if mode == Mode::Exact { 0.0 } else { DI_FLOAT_TOLERANCE };
        failures += usize::from(residual.is_nan() || residual > bound);
        worst = worst.max(residual);
    }
    let tol = if mode == Mode::Exact { 0.0 } else { DI_FLOAT_TOLERANCE };
    Ok(vec![
        Check::le(format!("max_residual_{}", mode.as_str()), worst, tol),
        Check::exact("failing_cases", json!(failures), json!(0)),
    ])
}

/// `||x^{sn}||` and `||(x^{sn})^{(ts+j)}||` against their closed forms.
fn qms_golden_mismatches(m: &RationalParam, s: u32, nmax: u32, mode: Mode) -> Result<usize> {
    let mut bad = 0;
    for n in 1..=nmax {
        let big_n = (s * n) as u64;
        let mono = UniPoly::monomial(big_n as usize, ExactC::from_i64(1));
        // ||x^N|| = N! (N!)^{-m}
        let mut cases = vec![(mono.clone(), BigRational::from_integer(factorial(big_n)), big_n)];
        for t in 0..n {
            for j in 1..=s {
                let k = (t * s + j) as u64;
                let falling = BigRational::new(factorial(big_n), factorial(big_n - k));
                let dp = UniPoly::monomial((big_n - k) as usize, exact_real(falling));
                // N!/(s-j)! · ((s(n-t-1))!)^{-m}
                let c = BigRational::new(factorial(big_n), factorial((s - j) as u64));
                cases.push((dp, c, (s * (n - t - 1)) as u64));
            }
        }
        for (p, c, r) in cases {
            let expected = QmsExact::factorial_power(c, r, m.exact());
            bad += usize::from(match mode {
                Mode::Exact => qms_norm_exact(&p, m.exact(), s)? != expected,
                Mode::Float => {
                    let pf = UniPoly::new(p.coeffs().iter().map(exact_to_c64).collect());
                    let got = qms_norm(&pf, m.to_f64(), s)?.ln();
                    (got - expected.ln()).abs() > 1e-9 * expected.ln().abs().max(1.0)
                }
            });
        }
    }
    Ok(bad)
}

fn exact_to_c64(c: &ExactC) -> C64 {
    C64::new(rational_to_f64(&c.re), rational_to_f64(&c.im))
}

fn qms_suite(mode: Mode) -> Result<Vec<Check>> {
    let ms = [RationalParam::from_ratio(1, 2), RationalParam::from_ratio(1, 1), RationalParam::from_ratio(2, 1)];
    let mut checks = Vec::new();
    for m in &ms {
        for s in 2..=4 {
            let bad = qms_golden_mismatches(m, s, 6, mode)?;
            checks.push(Check::exact(format!("golden m={m} s={s}"), json!(bad), json!(0)));
        }
    }
    for m in &ms {
        for s in 1..=4 {
            for k in 1..=2 * s {
                let r = qms_exact_mk(m, s, k)?;
                let closed = qms_closed_form(m.to_f64(), s, k);
                checks.push(Check::close(format!("slope m={m} s={s} k={k}"), r.fitted_slope, closed, QMS_SLOPE_TOLERANCE));
            }
        }
    }
    let one = RationalParam::from_ratio(1, 1);
    let mk = (1..=12).map(|k| Ok((k, qms_exact_mk(&one, 3, k)?.fitted_slope))).collect::<Result<Vec<_>>>()?;
    let a = asymptotic_exponent(&mk)?;
    checks.push(Check::le("limit m=1 s=3", a.estimate, 1.1));
    checks.push(Check::ge("max_ratio m=1 s=3", a.max_ratio, 2.5));
    Ok(checks)
}

fn nikolskii_suite(seed: u64) -> Result<Vec<Check>> {
    let corpus: Vec<ChebPoly> = (0..NIKOLSKII_CASES)
        .map(|i| {
            let mut r = rng(derive_seed(seed, &[i as u64, 0x4e]));
            let n = r.random_range(1..=32);
            random_cheb(&mut r, n)
        })
        .collect();
    let mut checks = Vec::new();
    for s in [1.0, 2.0, 4.0] {
        let c = nikolskii_sandwich(&corpus, s)?;
        checks.push(Check::exact(format!("violations s={s}"), json!(c.lower_violations + c.upper_violations), json!(0)));
        checks.push(Check::exact(format!("checked s={s}"), json!(c.checked), json!(NIKOLSKII_CASES)));
    }
    Ok(checks)
}

fn bernstein_schur_suite(seed: u64) -> Result<Vec<Check>> {
    let corpus: Vec<usize> = (1..=64).collect();
    let fit: Vec<usize> = (8..=64).step_by(8).collect();
    let r = bernstein_schur_check(&corpus, &fit, &SearchConfig::with_seed(seed))?;
    let mut checks: Vec<Check> = r
        .inequalities
        .iter()
        .map(|i| Check::exact(format!("{} violations", i.name), json!(i.violations), json!(0)))
        .collect();
    checks.push(Check::close("schur exponent", r.schur_fit.slope_ls, 2.0, 0.15));
    Ok(checks)
}

fn laplacian_suite() -> Result<Vec<Check>> {
    let square = CompactSet::cube(2);
    let mut checks = Vec::new();
    for l in 1..=2 {
        let r = laplacian_vs_gradient_check(&square, 24, l)?;
        checks.push(Check::close(format!("ratio l={l}"), r.ratio, r.predicted, 0.6));
    }
    Ok(checks)
}

fn floor_suite(seed: u64) -> Result<Vec<Check>> {
    let degrees: Vec<usize> = (2..=16).collect();
    let cfg = SearchConfig { seed, random_candidates: 16, ascent_rounds: 50 };
    let disk = NormSpec::Sup { set: CompactSet::disk(C64::new(0.0, 0.0), 1.0)? };
    let mut checks = Vec::new();
    for (label, q) in [("interval", NormSpec::sup_unit()), ("disk", disk)] {
        for k in [0, 1, 2] {
            let r = spectral_exponent_floor(&q, k, &degrees, &cfg)?;
            let slope = r.search_fit.as_ref().map_or(k as f64, |f| f.slope_ls);
            checks.push(Check::new(
                format!("{label} k={k}"),
                r.passes,
                json!(slope),
                json!(k as f64),
                crate::exponents::FLOOR_SLACK * k as f64,
                ">=",
            ));
        }
    }
    Ok(checks)
}
