//! Polynomial arithmetic: monomial and Chebyshev-basis univariate
//! polynomials, sparse multivariate polynomials, and the constant-coefficient
//! differential operators acting on them.

mod cheb;
pub mod families;
mod multi;
mod ops;
mod uni;

pub use cheb::{ChebPoly, Univariate};
pub use multi::{MultiIndex, MultiPoly, PolyLimits};
pub use ops::{di_residual, di_sides, dir_derivative, hdop_apply, DirOp};
pub use uni::UniPoly;
