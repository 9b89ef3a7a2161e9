//! Markov factor tables and their CSV form.

use serde::{Deserialize, Serialize};

use crate::artifact::{fmt_f64, ArtifactMeta};
use crate::error::{Error, Result};
use crate::exponents::fit::{fit_power_law, ExponentFit};
use crate::norms::NormSpec;

pub const CSV_HEADER: &str = "op,n,factor,certification,witness_id,log_n,log_factor";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certification {
    /// Largest singular value of an L² operator matrix.
    Exact,
    /// Best ratio found by a search.
    LowerBound,
}

impl Certification {
    pub fn as_str(self) -> &'static str {
        match self {
            Certification::Exact => "Exact",
            Certification::LowerBound => "LowerBound",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "Exact" => Some(Certification::Exact),
            "LowerBound" => Some(Certification::LowerBound),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub factor: f64,
    pub witness_id: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovTable {
    /// Operator descriptor such as `deriv:1`.
    pub op: String,
    pub rows: Vec<TableRow>,
    pub certification: Certification,
    /// Absent for tables read back from CSV.
    pub normspec: Option<NormSpec>,
}

impl MarkovTable {
    pub fn new(op: String, mut rows: Vec<TableRow>, certification: Certification, normspec: Option<NormSpec>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.factor.is_nan() || r.factor < 0.0) {
            return Err(Error::InvalidParameter(format!("factor {} at n = {} is not nonnegative", r.factor, r.n)));
        }
        rows.sort_by_key(|r| r.n);
        Ok(Self { op, rows, certification, normspec })
    }

    pub fn factor(&self, n: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.n == n).map(|r| r.factor)
    }

    /// Power-law fit of the rows with `n >= 1`.
    pub fn fit(&self, window: Option<[f64; 2]>) -> Result<ExponentFit> {
        let pts: Vec<(f64, f64)> = self.rows.iter().filter(|r| r.n >= 1).map(|r| (r.n as f64, r.factor)).collect();
        fit_power_law(&pts, window)
    }

    pub fn to_csv(&self, meta: &ArtifactMeta) -> String {
        let mut out = format!("{}\n{CSV_HEADER}\n", meta.csv_comment());
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.op,
                r.n,
                fmt_f64(r.factor),
                self.certification.as_str(),
                r.witness_id,
                fmt_f64((r.n as f64).ln()),
                fmt_f64(r.factor.ln()),
            ));
        }
        out
    }

    /// Parses [`MarkovTable::to_csv`] output; `#` lines are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |line: usize, what: &str| Error::InvalidParameter(format!("table line {line}: {what}"));
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());
        match lines.next() {
            Some((_, h)) if h.trim() == CSV_HEADER => {}
            Some((i, _)) => return Err(bad(i + 1, "unexpected header")),
            None => return Err(Error::TooFewRows { needed: 1, found: 0 }),
        }
        let mut op = None;
        let mut cert = None;
        let mut rows = Vec::new();
        for (i, line) in lines {
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 7 {
                return Err(bad(i + 1, "expected 7 fields"));
            }
            let c = Certification::parse(f[3]).ok_or_else(|| bad(i + 1, "unknown certification"))?;
            if op.get_or_insert_with(|| f[0].to_string()) != f[0] || *cert.get_or_insert(c) != c {
                return Err(bad(i + 1, "mixed operators or certifications"));
            }
            rows.push(TableRow {
                n: f[1].parse().map_err(|_| bad(i + 1, "degree is not an integer"))?,
                factor: f[2].parse().map_err(|_| bad(i + 1, "factor is not a number"))?,
                witness_id: f[4].to_string(),
            });
        }
        Self::new(op.unwrap_or_default(), rows, cert.unwrap_or(Certification::LowerBound), None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artifact::Mode;

    #[test]
    fn csv_round_trip() {
        let rows = (1..=6).map(|n| TableRow { n, factor: (n * n) as f64, witness_id: format!("chebyshev:{n}") }).collect();
        let t = MarkovTable::new("deriv:1".into(), rows, Certification::LowerBound, None).unwrap();
        let csv = t.to_csv(&ArtifactMeta::unconfigured(3, Mode::Float));
        assert_eq!(csv.lines().nth(1), Some(CSV_HEADER));
        assert!(csv.contains("deriv:1,2,4,LowerBound,chebyshev:2,0.6931471805599453,1.3862943611198906"));
        let back = MarkovTable::from_csv(&csv).unwrap();
        assert_eq!(back.rows, t.rows);
        assert!((back.fit(None).unwrap().slope_ls - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_factors_and_bad_headers() {
        let row = TableRow { n: 1, factor: -1.0, witness_id: "x".into() };
        assert!(MarkovTable::new("deriv:1".into(), vec![row], Certification::Exact, None).is_err());
        assert!(MarkovTable::from_csv("n,factor\n1,2\n").is_err());
        assert!(matches!(MarkovTable::from_csv(""), Err(Error::TooFewRows { .. })));
    }
}
