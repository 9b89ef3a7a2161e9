//! Orthonormal polynomial systems from three-term recurrences.
//!
//! `b_{n+1} P̂_{n+1} = (x - a_n) P̂_n - b_n P̂_{n-1}` with `P̂_0 = 1`, `b_0 = 1`
//! and `b_n > 0`, so every `P̂_n` has a positive leading coefficient.

use crate::artifact::{fmt_f64, ArtifactMeta};
use crate::error::{Error, Result};
use crate::exponents::{fit_power_law, ExponentFit};
use crate::norms::measure::jacobi_recurrence;
use crate::norms::{sup_uni, CompactSet, Measure, Weight};
use crate::polycore::families::Family;
use crate::polycore::{ChebPoly, Univariate};
use crate::scalar::C64;

/// Hard cap on the degree of a system.
pub const NMAX_CAP: usize = 256;
pub const DEFAULT_NMAX: usize = 64;
pub const GRAM_TOLERANCE: f64 = 1e-10;
/// Degree stride of the recorded orthogonality drift.
pub const DRIFT_STRIDE: usize = 16;

/// A sequence of polynomials indexed by degree.
pub trait PolyFamily: Sync {
    fn member(&self, n: usize) -> Result<ChebPoly>;
}

impl PolyFamily for [ChebPoly] {
    fn member(&self, n: usize) -> Result<ChebPoly> {
        self.get(n).cloned().ok_or(Error::DegreeExceedsSystem { degree: n, nmax: self.len().saturating_sub(1) })
    }
}

impl PolyFamily for Vec<ChebPoly> {
    fn member(&self, n: usize) -> Result<ChebPoly> {
        self.as_slice().member(n)
    }
}

impl PolyFamily for Family {
    fn member(&self, n: usize) -> Result<ChebPoly> {
        Ok(Family::member(*self, n))
    }
}

#[derive(Clone, Debug)]
pub struct OrthoSystem {
    a: Vec<f64>,
    b: Vec<f64>,
    measure: Measure,
    nmax: usize,
    polys: Vec<ChebPoly>,
    /// `values[n][i] = P̂_n(x_i)` at the measure's nodes.
    values: Vec<Vec<f64>>,
    drift: Vec<(usize, f64)>,
}

fn check_nmax(nmax: usize) -> Result<()> {
    if nmax > NMAX_CAP {
        return Err(Error::LimitExceeded(format!("nmax {nmax} exceeds the cap {NMAX_CAP}")));
    }
    Ok(())
}

/// Orthonormal system of the normalized Jacobi weight `(1-x)^α (1+x)^β` on `[-1, 1]`.
pub fn jacobi_system(alpha: f64, beta: f64, nmax: usize) -> Result<OrthoSystem> {
    check_nmax(nmax)?;
    let measure = Measure::jacobi(alpha, beta, (2 * nmax).max(1))?;
    OrthoSystem::analytic(measure, nmax)
}

/// Discrete Stieltjes procedure on the nodes of `mu`.
pub fn stieltjes_orthonormalize(mu: &Measure, nmax: usize) -> Result<OrthoSystem> {
    check_nmax(nmax)?;
    if mu.budget() < 2 * nmax {
        return Err(Error::DegreeBeyondBudget { degree: 2 * nmax, budget: mu.budget() });
    }
    let xs = mu.nodes();
    let w = mu.weights();
    let dot = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(v).zip(w).map(|((a, b), c)| a * b * c).sum() };
    let mut a = Vec::with_capacity(nmax + 1);
    let mut b = vec![1.0];
    let mut prev = vec![0.0; xs.len()];
    let mut cur = vec![1.0; xs.len()];
    for n in 0..=nmax {
        let xp: Vec<f64> = cur.iter().zip(&xs).map(|(p, x)| p * x).collect();
        let an = dot(&xp, &cur);
        a.push(an);
        if n == nmax {
            break;
        }
        let bn = b[n];
        let r: Vec<f64> = (0..xs.len()).map(|i| (xs[i] - an) * cur[i] - bn * prev[i]).collect();
        let norm = dot(&r, &r).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::OrthogonalityLoss { degree: n + 1, deviation: 1.0 });
        }
        b.push(norm);
        prev = cur;
        cur = r.into_iter().map(|v| v / norm).collect();
    }
    let sys = OrthoSystem::from_recurrence(mu.clone(), nmax, a, b);
    sys.check_gram()?;
    Ok(sys)
}

impl OrthoSystem {
    /// Uses the closed-form recurrence when the weight is of Jacobi type,
    /// mapped affinely to the support, and the Stieltjes procedure otherwise.
    pub fn from_measure(mu: &Measure, nmax: usize) -> Result<Self> {
        check_nmax(nmax)?;
        match mu.weight() {
            Weight::Tabulated(_) => stieltjes_orthonormalize(mu, nmax),
            _ if mu.budget() < nmax => Err(Error::DegreeBeyondBudget { degree: nmax, budget: mu.budget() }),
            _ => Self::analytic(mu.clone(), nmax),
        }
    }

    fn analytic(measure: Measure, nmax: usize) -> Result<Self> {
        let (alpha, beta) = measure.jacobi_params().expect("Jacobi-type weight");
        let (at, bt) = jacobi_recurrence(alpha, beta, nmax + 1);
        let iv = measure.support();
        let a = at.iter().map(|&v| iv.mid() + iv.half_width() * v).collect();
        let b = bt.iter().enumerate().map(|(n, &v)| if n == 0 { 1.0 } else { iv.half_width() * v.sqrt() }).collect();
        Ok(Self::from_recurrence(measure, nmax, a, b))
    }

    fn from_recurrence(measure: Measure, nmax: usize, a: Vec<f64>, b: Vec<f64>) -> Self {
        let xs = measure.nodes();
        let mut polys = vec![ChebPoly::from_real(&[1.0])];
        let mut values = vec![vec![1.0; xs.len()]];
        for n in 0..nmax {
            let lead = polys[n].mul_x().sub(&polys[n].scale_real(a[n]));
            let next = if n == 0 { lead } else { lead.sub(&polys[n - 1].scale_real(b[n])) };
            polys.push(next.scale_real(1.0 / b[n + 1]));
            let row: Vec<f64> = (0..xs.len())
                .map(|i| {
                    let p_prev = if n == 0 { 0.0 } else { values[n - 1][i] };
                    ((xs[i] - a[n]) * values[n][i] - b[n] * p_prev) / b[n + 1]
                })
                .collect();
            values.push(row);
        }
        let mut sys = Self { a, b, measure, nmax, polys, values, drift: Vec::new() };
        sys.drift = sys.compute_drift();
        sys
    }

    /// Max Gram deviation of the leading `n+1` functions, at every stride and at `nmax`.
    fn compute_drift(&self) -> Vec<(usize, f64)> {
        let dev = self.gram_row_deviations();
        let mut out = Vec::new();
        let mut running = 0.0f64;
        for (n, d) in dev.iter().enumerate() {
            running = running.max(*d);
            if (n > 0 && n % DRIFT_STRIDE == 0) || n == self.nmax {
                out.push((n, running));
            }
        }
        out
    }

    /// `max_{i <= n} |⟨P̂_n, P̂_i⟩ - δ_{ni}|` for each `n`.
    fn gram_row_deviations(&self) -> Vec<f64> {
        let w = self.measure.weights();
        (0..=self.nmax)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        let g: f64 = self.values[n].iter().zip(&self.values[i]).zip(w).map(|((p, q), c)| p * q * c).sum();
                        (g - if i == n { 1.0 } else { 0.0 }).abs()
                    })
                    .fold(0.0, f64::max)
            })
            .collect()
    }

    fn check_gram(&self) -> Result<()> {
        for (n, d) in self.gram_row_deviations().into_iter().enumerate() {
            if d > GRAM_TOLERANCE {
                return Err(Error::OrthogonalityLoss { degree: n, deviation: d });
            }
        }
        Ok(())
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn measure(&self) -> &Measure {
        &self.measure
    }

    /// `a_0..=a_nmax`.
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// `b_0..=b_nmax` with `b_0 = 1`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn poly(&self, n: usize) -> Result<&ChebPoly> {
        self.polys.get(n).ok_or(Error::DegreeExceedsSystem { degree: n, nmax: self.nmax })
    }

    /// Recorded `(degree, max Gram deviation up to that degree)` pairs.
    pub fn drift(&self) -> &[(usize, f64)] {
        &self.drift
    }

    /// `P̂_n(x)` by the recurrence.
    pub fn eval(&self, n: usize, x: f64) -> Result<f64> {
        if n > self.nmax {
            return Err(Error::DegreeExceedsSystem { degree: n, nmax: self.nmax });
        }
        let (mut prev, mut cur) = (0.0, 1.0);
        for j in 0..n {
            let next = ((x - self.a[j]) * cur - self.b[j] * prev) / self.b[j + 1];
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// Gram matrix `⟨P̂_i, P̂_j⟩_μ` for `i, j <= n`.
    pub fn gram(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        if n > self.nmax {
            return Err(Error::DegreeExceedsSystem { degree: n, nmax: self.nmax });
        }
        let w = self.measure.weights();
        Ok((0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| self.values[i].iter().zip(&self.values[j]).zip(w).map(|((p, q), c)| p * q * c).sum())
                    .collect()
            })
            .collect())
    }

    /// `c_j = ⟨p, P̂_j⟩_μ` for `j = 0..=nmax`.
    pub fn expand<P: Univariate>(&self, p: &P) -> Result<Vec<C64>> {
        let d = p.degree().unwrap_or(0);
        if d > self.nmax {
            return Err(Error::DegreeExceedsSystem { degree: d, nmax: self.nmax });
        }
        let w = self.measure.weights();
        let pv: Vec<C64> = self.measure.nodes().iter().map(|&x| p.eval_real(x)).collect();
        Ok((0..=self.nmax)
            .map(|j| pv.iter().zip(&self.values[j]).zip(w).map(|((p, v), c)| p * (v * c)).sum())
            .collect())
    }

    /// `Σ c_j P̂_j`.
    pub fn reconstruct(&self, c: &[C64]) -> Result<ChebPoly> {
        if c.len() > self.nmax + 1 {
            return Err(Error::DegreeExceedsSystem { degree: c.len() - 1, nmax: self.nmax });
        }
        let mut out = ChebPoly::zero();
        for (j, cj) in c.iter().enumerate() {
            if *cj != C64::new(0.0, 0.0) {
                out = Univariate::add(&out, &self.polys[j].scale(*cj));
            }
        }
        Ok(out)
    }

    /// `(n, a_n, b_n, ||P̂_n||_E)` rows.
    pub fn sup_table(&self, set: &CompactSet) -> Result<Vec<(usize, f64, f64, f64)>> {
        (0..=self.nmax)
            .map(|n| Ok((n, self.a[n], self.b[n], sup_uni(&self.polys[n], set)?)))
            .collect()
    }

    /// CSV with columns `n,a_n,b_n,supnorm_E` after a `#` metadata line.
    pub fn to_csv(&self, set: &CompactSet, meta: &ArtifactMeta) -> Result<String> {
        let mut out = String::new();
        out.push_str(&meta.csv_comment());
        out.push('\n');
        out.push_str("n,a_n,b_n,supnorm_E\n");
        for (n, a, b, s) in self.sup_table(set)? {
            out.push_str(&format!("{n},{},{},{}\n", fmt_f64(a), fmt_f64(b), fmt_f64(s)));
        }
        Ok(out)
    }
}

impl PolyFamily for OrthoSystem {
    fn member(&self, n: usize) -> Result<ChebPoly> {
        self.poly(n).cloned()
    }
}

/// Fit of `log ||P̂_n||_E` against `log n` over `[nmax/4, nmax]`.
pub fn growth_exponent(sys: &OrthoSystem, set: &CompactSet) -> Result<ExponentFit> {
    if sys.nmax < 16 {
        return Err(Error::InvalidParameter(format!("growth exponent needs nmax >= 16, got {}", sys.nmax)));
    }
    let rows: Vec<(f64, f64)> = (1..=sys.nmax)
        .map(|n| Ok((n as f64, sup_uni(&sys.polys[n], set)?)))
        .collect::<Result<_>>()?;
    fit_power_law(&rows, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::lp_norm;

    #[test]
    fn legendre_first_members() {
        let sys = jacobi_system(0.0, 0.0, 8).unwrap();
        assert_eq!(sys.poly(0).unwrap(), &ChebPoly::from_real(&[1.0]));
        let p1 = sys.poly(1).unwrap();
        assert!((p1.eval_real(0.5).re - 3f64.sqrt() * 0.5).abs() < 1e-14);
        assert!((sys.eval(1, 0.5).unwrap() - 3f64.sqrt() * 0.5).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_member_is_scaled_t3() {
        let sys = jacobi_system(-0.5, -0.5, 8).unwrap();
        let p3 = sys.poly(3).unwrap();
        // P̂_3 = √2 T_3
        for &x in &[-0.7, 0.1, 0.9] {
            let t3 = 4.0 * x * x * x - 3.0 * x;
            assert!((p3.eval_real(x).re - 2f64.sqrt() * t3).abs() < 1e-13);
        }
        assert!((lp_norm(p3, sys.measure(), 2.0).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn gram_and_symmetry() {
        for &(al, be) in &[(-0.5, -0.5), (0.0, 0.0), (0.5, 1.0), (1.0, -0.5)] {
            let sys = jacobi_system(al, be, 64).unwrap();
            let (_, worst) = *sys.drift().last().unwrap();
            assert!(worst < GRAM_TOLERANCE, "({al}, {be}): {worst:e}");
            if al == be {
                assert!(sys.a().iter().all(|a| a.abs() < 1e-12));
            }
        }
    }

    #[test]
    fn stieltjes_matches_closed_form() {
        let mu = Measure::lebesgue(64);
        let s = stieltjes_orthonormalize(&mu, 32).unwrap();
        let j = jacobi_system(0.0, 0.0, 32).unwrap();
        for n in 0..=32 {
            assert!((s.a()[n] - j.a()[n]).abs() < 1e-10);
            assert!((s.b()[n] - j.b()[n]).abs() < 1e-10);
            assert_eq!(s.poly(n).unwrap().degree(), Some(n));
        }
        assert!(matches!(stieltjes_orthonormalize(&Measure::lebesgue(10), 8), Err(Error::DegreeBeyondBudget { .. })));
    }

    #[test]
    fn expansion_round_trip() {
        let sys = jacobi_system(0.5, 0.5, 12).unwrap();
        let e = sys.expand(&ChebPoly::from_real(&[1.0])).unwrap();
        assert!((e[0].re - 1.0).abs() < 1e-13 && e[1..].iter().all(|c| c.norm() < 1e-13));
        let e2 = sys.expand(sys.poly(2).unwrap()).unwrap();
        for (j, c) in e2.iter().enumerate() {
            assert!((c.re - if j == 2 { 1.0 } else { 0.0 }).abs() < 1e-12);
        }
        assert!(matches!(sys.expand(&ChebPoly::chebyshev_t(13)), Err(Error::DegreeExceedsSystem { .. })));
    }

    #[test]
    fn csv_export() {
        let sys = jacobi_system(-0.5, -0.5, 4).unwrap();
        let csv = sys.to_csv(&CompactSet::unit_interval(), &ArtifactMeta::unconfigured(0, Default::default())).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# tool=markov-lab"));
        assert_eq!(lines[1], "n,a_n,b_n,supnorm_E");
        assert_eq!(lines.len(), 2 + 5);
    }
}
