//! Sweeps of Markov factors over degrees.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exponents::l2::markov_factor_l2;
use crate::exponents::operator::Operator;
use crate::exponents::search::{markov_factor_search, SearchConfig};
use crate::exponents::table::{Certification, MarkovTable, TableRow};
use crate::norms::NormSpec;
use crate::orthopoly::OrthoSystem;

/// One row per degree: exact singular values for `L²` norms, search lower
/// bounds otherwise. Rows are computed in parallel; the result does not
/// depend on the thread count.
pub fn factor_table(q: &NormSpec, op: &Operator, degrees: &[usize], cfg: &SearchConfig) -> Result<MarkovTable> {
    let nmax = *degrees.iter().max().ok_or_else(|| Error::InvalidParameter("degree list is empty".into()))?;
    op.validate()?;
    let (rows, cert) = match q.l2_measure() {
        Some(mu) => {
            let sys = OrthoSystem::from_measure(mu, nmax)?;
            let rows = degrees
                .par_iter()
                .map(|&n| {
                    let f = markov_factor_l2(n, op, &sys)?;
                    Ok(TableRow { n, factor: f.factor, witness_id: format!("svd:{n}") })
                })
                .collect::<Result<Vec<_>>>()?;
            (rows, Certification::Exact)
        }
        None => {
            let rows = degrees
                .par_iter()
                .map(|&n| {
                    let r = markov_factor_search(n, op, q, cfg)?;
                    Ok(TableRow { n, factor: r.factor, witness_id: r.witness_id })
                })
                .collect::<Result<Vec<_>>>()?;
            (rows, Certification::LowerBound)
        }
    };
    MarkovTable::new(op.descriptor(), rows, cert, Some(q.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::Measure;

    #[test]
    fn legendre_table() {
        let q = NormSpec::Lp { measure: Measure::lebesgue(64), s: 2.0 };
        let t = factor_table(&q, &Operator::deriv(1), &[1, 2], &SearchConfig::default()).unwrap();
        assert_eq!(t.certification, Certification::Exact);
        assert!((t.rows[0].factor - 3f64.sqrt()).abs() < 1e-10);
        assert!((t.rows[1].factor - 15f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn identity_rows_are_one() {
        let t = factor_table(&NormSpec::sup_unit(), &Operator::deriv(0), &[1, 3, 5], &SearchConfig::default()).unwrap();
        assert!(t.rows.iter().all(|r| r.factor == 1.0));
        assert!(factor_table(&NormSpec::sup_unit(), &Operator::deriv(1), &[], &SearchConfig::default()).is_err());
    }
}
