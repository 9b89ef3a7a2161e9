//! Exact Markov factors for `L²(μ)` norms.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::exponents::operator::Operator;
use crate::orthopoly::OrthoSystem;
use crate::polycore::ChebPoly;
use crate::scalar::C64;

#[derive(Clone, Debug, PartialEq)]
pub struct L2Factor {
    pub factor: f64,
    /// Unit coefficient vector of the maximizer in the orthonormal basis.
    pub coeffs: Vec<f64>,
    pub witness: ChebPoly,
}

/// Matrix of `op` restricted to `P_n`, `D_ij = ⟨op P̂_j, P̂_i⟩_μ`.
pub fn operator_matrix(sys: &OrthoSystem, op: &Operator, n: usize) -> Result<DMatrix<f64>> {
    if n > sys.nmax() {
        return Err(Error::DegreeExceedsSystem { degree: n, nmax: sys.nmax() });
    }
    let mut d = DMatrix::zeros(n + 1, n + 1);
    for j in 0..=n {
        let image = op.apply_uni(sys.poly(j)?)?;
        let col = sys.expand(&image)?;
        for i in 0..=n {
            d[(i, j)] = col[i].re;
        }
    }
    Ok(d)
}

/// `max ||op P||_2 / ||P||_2` over `deg P <= n`, the largest singular value
/// of [`operator_matrix`], with its right singular vector as the maximizer.
pub fn markov_factor_l2(n: usize, op: &Operator, sys: &OrthoSystem) -> Result<L2Factor> {
    let d = operator_matrix(sys, op, n)?;
    let svd = d.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let (top, &factor) = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("matrix is at least 1x1");
    let mut coeffs: Vec<f64> = v_t.row(top).iter().copied().collect();
    // sign convention: largest entry positive
    let lead = coeffs.iter().copied().fold(0.0f64, |a, c| if c.abs() > a.abs() { c } else { a });
    if lead < 0.0 {
        coeffs.iter_mut().for_each(|c| *c = -*c);
    }
    let witness = sys.reconstruct(&coeffs.iter().map(|&c| C64::new(c, 0.0)).collect::<Vec<_>>())?;
    Ok(L2Factor { factor, coeffs, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::lp_norm;
    use crate::orthopoly::jacobi_system;
    use crate::polycore::Univariate;

    #[test]
    fn legendre_small_cases() {
        let sys = jacobi_system(0.0, 0.0, 8).unwrap();
        let d1 = Operator::deriv(1);
        assert_eq!(markov_factor_l2(0, &d1, &sys).unwrap().factor, 0.0);
        assert!((markov_factor_l2(1, &d1, &sys).unwrap().factor - 3f64.sqrt()).abs() < 1e-12);
        assert!((markov_factor_l2(2, &d1, &sys).unwrap().factor - 15f64.sqrt()).abs() < 1e-12);
        assert!((markov_factor_l2(5, &Operator::deriv(0), &sys).unwrap().factor - 1.0).abs() < 1e-12);
        assert!(matches!(markov_factor_l2(9, &d1, &sys), Err(Error::DegreeExceedsSystem { .. })));
    }

    #[test]
    fn witness_attains_factor() {
        let sys = jacobi_system(0.5, -0.5, 16).unwrap();
        let f = markov_factor_l2(12, &Operator::deriv(2), &sys).unwrap();
        let mu = sys.measure();
        let ratio = lp_norm(&f.witness.derivative(2), mu, 2.0).unwrap() / lp_norm(&f.witness, mu, 2.0).unwrap();
        assert!((ratio / f.factor - 1.0).abs() < 1e-9);
    }
}
