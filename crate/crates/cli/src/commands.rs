//! One function per subcommand. Each returns an [`Outcome`]; nothing here
//! touches the process exit code.

use std::path::{Path, PathBuf};

use markov_lab::artifact::{fmt_f64, ArtifactMeta, Mode};
use markov_lab::exponents::{factor_table, SearchConfig};
use markov_lab::exponents::MarkovTable;
use markov_lab::norms::{qms_norm_exact, CompactSet, NormSpec};
use markov_lab::orthopoly::{OrthoSystem, DEFAULT_NMAX};
use markov_lab::polycore::families::{named, parse_named, Family};
use markov_lab::polycore::{ChebPoly, UniPoly};
use markov_lab::scalar::{exact_from_f64, ExactC};
use markov_lab::verify::run_suite;
use serde::Serialize;
use serde_json::Value;

use crate::config::{missing, ConfigError, ExperimentConfig, PolyDescriptor};

#[derive(Debug)]
pub enum CliError {
    Config(ConfigError),
    Core(markov_lab::Error),
    Io(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e)
    }
}

impl From<markov_lab::Error> for CliError {
    fn from(e: markov_lab::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

/// What a command produced: the artifact text, the file extension it is
/// written under, a one-line summary and whether every check passed.
pub struct Outcome {
    pub artifact: String,
    pub extension: &'static str,
    pub summary: String,
    pub passed: bool,
}

/// Everything a command needs besides its own config fields.
pub struct Context {
    pub config: ExperimentConfig,
    pub meta: ArtifactMeta,
}

impl Context {
    pub fn new(config: ExperimentConfig, raw: &Value, seed_override: Option<u64>) -> Self {
        let seed = seed_override.unwrap_or(config.seed);
        let meta = ArtifactMeta::new(seed, config.mode, raw);
        Self { config, meta }
    }

    fn seed(&self) -> u64 {
        self.meta.seed
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifacts serialize");
    s.push('\n');
    s
}

fn normspec(cfg: &ExperimentConfig) -> Result<&NormSpec, ConfigError> {
    cfg.normspec.as_ref().ok_or_else(|| missing("normspec"))
}

fn descriptor_text(d: &PolyDescriptor) -> String {
    match d {
        PolyDescriptor::Named(s) => s.clone(),
        PolyDescriptor::Coeffs(c) => format!("{c:?}"),
    }
}

fn float_poly(d: &PolyDescriptor) -> Result<ChebPoly, CliError> {
    match d {
        PolyDescriptor::Coeffs(c) => {
            Ok(ChebPoly::from_monomial(&UniPoly::new(c.iter().map(|&x| markov_lab::scalar::C64::new(x, 0.0)).collect())))
        }
        PolyDescriptor::Named(s) => match s.trim().parse::<f64>() {
            Ok(x) => Ok(ChebPoly::from_real(&[x])),
            Err(_) => named(s).map_err(|e| ConfigError(format!("config field `poly`: {e}")).into()),
        },
    }
}

fn exact_poly(d: &PolyDescriptor) -> Result<UniPoly<ExactC>, CliError> {
    let bad = |what: String| CliError::Config(ConfigError(format!("config field `poly`: {what}")));
    let exact = |x: f64| exact_from_f64(x).ok_or_else(|| bad(format!("{x} has no exact value")));
    match d {
        PolyDescriptor::Coeffs(c) => Ok(UniPoly::new(c.iter().map(|&x| exact(x)).collect::<Result<_, _>>()?)),
        PolyDescriptor::Named(s) => {
            if let Ok(x) = s.trim().parse::<f64>() {
                return Ok(UniPoly::new(vec![exact(x)?]));
            }
            match parse_named(s) {
                Some((Family::Legendre, _)) => Err(bad("normalized Legendre members are irrational".into())),
                Some((family, n)) => Ok(family.exact_member(n)),
                None => Err(bad(format!("unknown polynomial family `{s}`"))),
            }
        }
    }
}

#[derive(Serialize)]
struct NormArtifact<'a> {
    meta: &'a ArtifactMeta,
    normspec: &'a NormSpec,
    poly: String,
    value: f64,
    /// Exact value as `num/den` or a sum of radicals, in exact mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
}

pub fn norm(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let q = normspec(cfg)?;
    let d = cfg.poly.as_ref().ok_or_else(|| missing("poly"))?;
    let (value, exact) = match cfg.mode {
        Mode::Float => (q.eval(&float_poly(d)?)?, None),
        Mode::Exact => {
            let NormSpec::Qms { m, s } = q else {
                return Err(ConfigError(format!("exact mode evaluates only qms norms, not {}", q.name())).into());
            };
            let v = qms_norm_exact(&exact_poly(d)?, m.exact(), *s)?;
            (v.to_f64(), Some(v.to_string()))
        }
    };
    let artifact = to_json(&NormArtifact { meta: &ctx.meta, normspec: q, poly: descriptor_text(d), value, exact });
    Ok(Outcome { artifact, extension: "norm.json", summary: fmt_f64(value), passed: true })
}

pub fn factor(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let q = normspec(cfg)?;
    let op = cfg.operator.as_ref().ok_or_else(|| missing("operator"))?;
    if cfg.degrees.is_empty() {
        return Err(missing("degrees").into());
    }
    if cfg.mode == Mode::Exact {
        return Err(ConfigError("factor-table runs in float mode only".into()).into());
    }
    let search = SearchConfig { seed: ctx.seed(), ..cfg.search.unwrap_or_default() };
    let table = factor_table(q, op, &cfg.degrees, &search)?;
    let summary = format!("{} rows, {}", table.rows.len(), table.certification.as_str());
    Ok(Outcome { artifact: table.to_csv(&ctx.meta), extension: "csv", summary, passed: true })
}

#[derive(Serialize)]
struct FitArtifact<'a> {
    meta: &'a ArtifactMeta,
    table: String,
    op: String,
    fit: markov_lab::exponents::ExponentFit,
}

pub fn fit(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let path = cfg.table.as_ref().ok_or_else(|| missing("table"))?;
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let table = MarkovTable::from_csv(&text)?;
    let fit = table.fit(cfg.window)?;
    let summary = format!("slope_ls={} slope_envelope={}", fmt_f64(fit.slope_ls), fmt_f64(fit.slope_envelope));
    let artifact = to_json(&FitArtifact { meta: &ctx.meta, table: path.display().to_string(), op: table.op, fit });
    Ok(Outcome { artifact, extension: "fit.json", summary, passed: true })
}

#[derive(Serialize)]
struct VerifyArtifact<'a> {
    meta: &'a ArtifactMeta,
    #[serde(flatten)]
    report: markov_lab::verify::SuiteReport,
}

pub fn verify(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let suite = cfg.suite.as_ref().ok_or_else(|| missing("suite"))?;
    if !markov_lab::verify::SUITES.contains(&suite.as_str()) {
        return Err(ConfigError(format!("config field `suite`: unknown suite {suite:?}")).into());
    }
    let report = run_suite(suite, cfg.mode, ctx.seed())?;
    let failed = report.failures().count();
    let summary = format!("{suite}: {} checks, {failed} failed", report.checks.len());
    let passed = report.passed();
    Ok(Outcome { artifact: to_json(&VerifyArtifact { meta: &ctx.meta, report }), extension: "verify.json", summary, passed })
}

pub fn ortho_export(ctx: &Context) -> Result<Outcome, CliError> {
    let cfg = &ctx.config;
    let mu = cfg.measure.as_ref().ok_or_else(|| missing("measure"))?;
    let sys = OrthoSystem::from_measure(mu, cfg.nmax.unwrap_or(DEFAULT_NMAX))?;
    let set = cfg.set.clone().unwrap_or_else(CompactSet::unit_interval);
    let summary = format!("nmax={} drift={}", sys.nmax(), fmt_f64(sys.drift().iter().map(|d| d.1).fold(0.0, f64::max)));
    Ok(Outcome { artifact: sys.to_csv(&set, &ctx.meta)?, extension: "ortho.csv", summary, passed: true })
}

/// `prefix.extension`, e.g. `runs/legendre` and `csv` give `runs/legendre.csv`.
pub fn artifact_path(prefix: &Path, extension: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(extension);
    PathBuf::from(s)
}
