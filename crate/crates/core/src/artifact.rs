//! Metadata and number formatting shared by every emitted CSV/JSON file.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const TOOL: &str = "markov-lab";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Float,
    Exact,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Float => "float",
            Mode::Exact => "exact",
        }
    }
}

/// Provenance embedded in every artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArtifactMeta {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub mode: Mode,
    pub config_sha256: String,
}

impl ArtifactMeta {
    pub fn new(seed: u64, mode: Mode, config: &serde_json::Value) -> Self {
        Self {
            tool: TOOL.into(),
            version: VERSION.into(),
            seed,
            mode,
            config_sha256: config_hash(config),
        }
    }

    /// For artifacts produced without a config file.
    pub fn unconfigured(seed: u64, mode: Mode) -> Self {
        Self::new(seed, mode, &serde_json::Value::Null)
    }

    /// Leading `#` line of CSV artifacts.
    pub fn csv_comment(&self) -> String {
        format!(
            "# tool={} version={} seed={} mode={} config_sha256={}",
            self.tool,
            self.version,
            self.seed,
            self.mode.as_str(),
            self.config_sha256
        )
    }
}

/// SHA-256 of the compact JSON text. `serde_json` maps keep keys sorted, so
/// equal configs hash equally regardless of key order in the source file.
pub fn config_hash(config: &serde_json::Value) -> String {
    let text = serde_json::to_string(config).expect("JSON values always serialize");
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Locale-free rendering that round-trips through `str::parse::<f64>`.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 || (1e-4..1e15).contains(&x.abs()) {
        format!("{x}")
    } else if x.is_finite() {
        format!("{x:e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_ignores_key_order() {
        let a: serde_json::Value = serde_json::from_str(r#"{"b":1,"a":[1,2]}"#).unwrap();
        let b: serde_json::Value = serde_json::from_str(r#"{"a":[1,2],"b":1}"#).unwrap();
        assert_eq!(config_hash(&a), config_hash(&b));
        assert_eq!(config_hash(&a).len(), 64);
    }

    #[test]
    fn numbers_round_trip() {
        for x in [0.0, 1.0, 3f64.sqrt(), 1e-300, 6.02e23, -2.5e-7] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(2.0), "2");
    }
}
