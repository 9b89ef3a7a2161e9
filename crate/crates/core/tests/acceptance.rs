//! The ten acceptance criteria, one PASS/FAIL line each.
//!
//! The lines bypass output capture, so plain `cargo test` shows them. A
//! failure outside [`KNOWN_DEVIATIONS`] fails the test.

use std::io::Write;
use std::time::{Duration, Instant};

use markov_lab::artifact::{ArtifactMeta, Mode};
use markov_lab::exponents::{
    asymptotic_exponent, factor_table, markov_factor_l2, mk_hat, Operator, SearchConfig,
};
use markov_lab::norms::{CompactSet, Measure, NormSpec};
use markov_lab::orthopoly::{growth_exponent, jacobi_system};
use markov_lab::polycore::families::Family;
use markov_lab::polycore::{ChebPoly, Univariate};
use markov_lab::verify::{run_suite, SuiteReport};

/// Criterion 9 asks the Taylor-disk norm to share the interval's asymptotic
/// exponent. That norm's spectral part is the sup norm over the stadium
/// `[-1,1] + D(0,r)`, a set with interior, whose exponent is 1, not 2.
const KNOWN_DEVIATIONS: &[u32] = &[9];

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn suite_detail(r: &SuiteReport) -> String {
    let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        format!("{} checks", r.checks.len())
    } else {
        format!("{} checks, failed: {}", r.checks.len(), failed.join(", "))
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn identity() -> Outcome {
    let ((float, exact), took) = timed(|| (run_suite("di", Mode::Float, 1).unwrap(), run_suite("di", Mode::Exact, 1).unwrap()));
    Outcome {
        id: 1,
        title: "identity (DI) on 200 random polynomials",
        pass: float.passed() && exact.passed() && took < Duration::from_secs(30),
        detail: format!("float {}; exact {}; {:.1}s", suite_detail(&float), suite_detail(&exact), took.as_secs_f64()),
    }
}

fn qms_golden() -> Outcome {
    let (r, took) = timed(|| run_suite("qms", Mode::Exact, 1).unwrap());
    Outcome {
        id: 2,
        title: "q_{m,s} golden values, chain exponents and separation",
        pass: r.passed() && took < Duration::from_secs(120),
        detail: format!("{}; {:.1}s", suite_detail(&r), took.as_secs_f64()),
    }
}

fn l2_factors() -> Outcome {
    let (out, took) = timed(|| {
        let sys = jacobi_system(0.0, 0.0, 2).unwrap();
        let d1 = Operator::deriv(1);
        let f1 = markov_factor_l2(1, &d1, &sys).unwrap().factor;
        let f2 = markov_factor_l2(2, &d1, &sys).unwrap().factor;
        let q = NormSpec::Lp { measure: Measure::lebesgue(128), s: 2.0 };
        let degrees: Vec<usize> = (4..=64).collect();
        let fit = factor_table(&q, &d1, &degrees, &SearchConfig::default()).unwrap().fit(None).unwrap();
        (f1, f2, fit.slope_ls)
    });
    let (f1, f2, slope) = out;
    let exact = (f1 - 3f64.sqrt()).abs() < 1e-8 && (f2 - 15f64.sqrt()).abs() < 1e-8;
    Outcome {
        id: 3,
        title: "L2 Markov factors under the Legendre measure",
        pass: exact && (1.9..=2.1).contains(&slope) && took < Duration::from_secs(60),
        detail: format!("M(1)={f1:.12} M(2)={f2:.12} slope={slope:.4}; {:.1}s", took.as_secs_f64()),
    }
}

fn sup_interval() -> Outcome {
    let q = NormSpec::sup_unit();
    let d1 = Operator::deriv(1);
    let degrees: Vec<usize> = (1..=8).chain([12, 16, 24, 32, 48, 64]).collect();
    let table = factor_table(&q, &d1, &degrees, &SearchConfig::default()).unwrap();
    let mut worst_witness = 0.0f64;
    let mut below = Vec::new();
    for row in &table.rows {
        let n2 = (row.n * row.n) as f64;
        let t = ChebPoly::chebyshev_t(row.n);
        let witness = q.eval(&t.derivative(1)).unwrap() / q.eval(&t).unwrap();
        worst_witness = worst_witness.max((witness / n2 - 1.0).abs());
        if row.factor < n2 * (1.0 - 1e-8) {
            below.push(row.n);
        }
    }
    let slope = table.fit(None).unwrap().slope_ls;
    Outcome {
        id: 4,
        title: "sup-norm exponent on [-1,1]",
        pass: below.is_empty() && worst_witness <= 1e-8 && (1.9..=2.1).contains(&slope),
        detail: format!("slope={slope:.4} witness deviation={worst_witness:.1e} rows below n^2: {below:?}"),
    }
}

fn nikolskii() -> Outcome {
    let r = run_suite("nikolskii", Mode::Float, 1).unwrap();
    Outcome { id: 5, title: "Nikolskii sandwich for p = 1, 2, 4", pass: r.passed(), detail: suite_detail(&r) }
}

fn family_estimator() -> Outcome {
    let interval = CompactSet::unit_interval();
    let degrees: Vec<usize> = (1..=256).collect();
    let legendre = jacobi_system(0.0, 0.0, 256).unwrap();
    let chebyshev = jacobi_system(-0.5, -0.5, 256).unwrap();
    let mut ratios = Vec::new();
    for k in 1..=3u32 {
        for (name, fam) in [("chebyshev", &Family::ChebyshevT as &dyn markov_lab::orthopoly::PolyFamily), ("legendre", &legendre)] {
            let r = mk_hat(fam, &interval, k, &degrees).unwrap();
            ratios.push((name, k, r.fit.slope_ls / k as f64));
        }
    }
    let alpha_t = growth_exponent(&chebyshev, &interval).unwrap().slope_ls;
    let alpha_p = growth_exponent(&legendre, &interval).unwrap().slope_ls;
    let ratios_ok = ratios.iter().all(|r| (1.8..=2.2).contains(&r.2));
    let detail = ratios.iter().map(|(n, k, v)| format!("{n} k={k}: {v:.3}")).collect::<Vec<_>>().join(", ");
    Outcome {
        id: 6,
        title: "orthonormal-family exponent estimator",
        pass: ratios_ok && alpha_t.abs() <= 0.05 && (alpha_p - 0.5).abs() <= 0.05,
        detail: format!("{detail}; growth chebyshev={alpha_t:.3} legendre={alpha_p:.3}"),
    }
}

fn bernstein_schur() -> Outcome {
    let r = run_suite("bernstein-schur", Mode::Float, 1).unwrap();
    Outcome { id: 7, title: "Bernstein and Schur inequalities", pass: r.passed(), detail: suite_detail(&r) }
}

fn laplacian() -> Outcome {
    let r = run_suite("laplacian", Mode::Float, 1).unwrap();
    let ratios: Vec<String> = r.checks.iter().map(|c| format!("{}={}", c.name, c.measured)).collect();
    Outcome { id: 8, title: "Laplacian against gradient on [-1,1]^2", pass: r.passed(), detail: ratios.join(" ") }
}

fn trend_estimate(q: &NormSpec, degrees: &[usize]) -> f64 {
    let cfg = SearchConfig::with_seed(1);
    let mk: Vec<(u32, f64)> = (1..=4)
        .map(|k| (k, factor_table(q, &Operator::deriv(k), degrees, &cfg).unwrap().fit(None).unwrap().slope_ls))
        .collect();
    asymptotic_exponent(&mk).unwrap().estimate
}

fn admissible_shadow() -> Outcome {
    let degrees = [4, 6, 8, 10, 12, 16, 20, 24];
    let interval = CompactSet::unit_interval();
    let sup = trend_estimate(&NormSpec::sup_unit(), &degrees);
    let plus = trend_estimate(
        &NormSpec::SupPlusLp { set: interval.clone(), measure: Measure::lebesgue(64), s: 2.0 },
        &degrees,
    );
    let taylor = trend_estimate(&NormSpec::TaylorDisk { set: interval, r: 1.0 }, &degrees);
    // the stadium has interior, so its sup norm's exponent is 1
    assert!((taylor - 1.0).abs() <= 0.25, "Taylor-disk estimate {taylor} is far from the stadium exponent 1");
    Outcome {
        id: 9,
        title: "SupPlusLp and TaylorDisk trends match Sup",
        pass: (plus - sup).abs() <= 0.25 && (taylor - sup).abs() <= 0.25,
        detail: format!("sup={sup:.3} sup+lp={plus:.3} taylor_disk={taylor:.3}"),
    }
}

fn determinism() -> Outcome {
    let meta = ArtifactMeta::unconfigured(4, Mode::Float);
    let artifacts = || {
        let cfg = SearchConfig { seed: 4, random_candidates: 16, ascent_rounds: 20 };
        let sup = factor_table(&NormSpec::sup_unit(), &Operator::deriv(2), &[3, 5, 8, 13], &cfg).unwrap().to_csv(&meta);
        let l2 = NormSpec::Lp { measure: Measure::jacobi(0.5, -0.5, 32).unwrap(), s: 2.0 };
        let l2 = factor_table(&l2, &Operator::deriv(1), &[2, 4, 8, 16], &cfg).unwrap().to_csv(&meta);
        let ortho = jacobi_system(1.0, 0.0, 16).unwrap().to_csv(&CompactSet::unit_interval(), &meta).unwrap();
        let report = serde_json::to_string(&run_suite("nikolskii", Mode::Float, 4).unwrap()).unwrap();
        [sup, l2, ortho, report]
    };
    let (a, b) = (artifacts(), artifacts());
    let same = a.iter().zip(&b).filter(|(x, y)| x == y).count();
    Outcome { id: 10, title: "artifacts byte-identical across runs", pass: same == a.len(), detail: format!("{same}/{} identical", a.len()) }
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Outcome; 10] = [
        identity,
        qms_golden,
        l2_factors,
        sup_interval,
        nikolskii,
        family_estimator,
        bernstein_schur,
        laplacian,
        admissible_shadow,
        determinism,
    ];
    let mut unexpected = Vec::new();
    for c in criteria {
        let o = c();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        // straight to stdout, past the harness capture, so the lines show in plain `cargo test`
        let mut out = std::io::stdout().lock();
        writeln!(out, "criterion {:>2} {tag}: {} ({})", o.id, o.title, o.detail).unwrap();
        if !o.pass && !KNOWN_DEVIATIONS.contains(&o.id) {
            unexpected.push(o.id);
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
