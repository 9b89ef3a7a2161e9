//! The JSON experiment record every subcommand reads.

use std::path::{Path, PathBuf};

use markov_lab::artifact::Mode;
use markov_lab::exponents::Operator;
use markov_lab::norms::{CompactSet, Measure, NormSpec};
use serde::Deserialize;
use serde_json::Value;

/// A polynomial given by name (`chebyshev:8`), as a constant (`"1"`), or by
/// its monomial coefficients in increasing power.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum PolyDescriptor {
    Named(String),
    Coeffs(Vec<f64>),
}

/// Fields a subcommand does not use are ignored; unknown fields are errors.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub normspec: Option<NormSpec>,
    pub operator: Option<Operator>,
    #[serde(default)]
    pub degrees: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub mode: Mode,
    pub poly: Option<PolyDescriptor>,
    /// `verify`: suite name.
    pub suite: Option<String>,
    /// `fit`: path of a factor-table CSV.
    pub table: Option<PathBuf>,
    /// `fit`: degree window `[lo, hi]`.
    pub window: Option<[f64; 2]>,
    /// `factor-table`: search tuning.
    pub search: Option<markov_lab::exponents::SearchConfig>,
    /// `ortho-export`: orthogonality measure, top degree and sup set.
    pub measure: Option<Measure>,
    pub nmax: Option<usize>,
    pub set: Option<CompactSet>,
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn missing(field: &str) -> ConfigError {
    ConfigError(format!("config field `{field}` is required for this command"))
}

pub fn parse(text: &str) -> Result<(ExperimentConfig, Value), ConfigError> {
    let raw: Value = serde_json::from_str(text).map_err(|e| ConfigError(format!("config is not valid JSON: {e}")))?;
    let config: ExperimentConfig = serde_path_to_error::deserialize(&raw).map_err(|e| {
        let path = e.path().to_string();
        ConfigError(format!("config field `{path}`: {}", e.into_inner()))
    })?;
    if let Some(w) = config.degrees.windows(2).find(|w| w[0] >= w[1]) {
        return Err(ConfigError(format!("config field `degrees`: not strictly increasing at {} then {}", w[0], w[1])));
    }
    Ok((config, raw))
}

/// Reads a config file. The raw JSON is kept because the artifact hash covers it.
pub fn load(path: &Path) -> Result<(ExperimentConfig, Value), ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}
