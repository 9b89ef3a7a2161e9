//! Markov factors, their tables and exponent fits.

mod factor;
mod asymptotic;
mod checks;
mod fit;
mod l2;
mod operator;
mod search;
mod table;

pub use asymptotic::{asymptotic_exponent, qms_closed_form, AsymptoticExponent};
pub use checks::{
    bernstein_schur_check, laplacian_vs_gradient_check, mk_hat, qms_exact_mk, spectral_exponent_floor, BernsteinSchurReport,
    FamilyExponent, FloorReport, InequalityCheck, LaplacianReport, QmsExponent, FLOOR_SLACK, QMS_FIT_RANGE,
};
pub use factor::factor_table;
pub use fit::{default_window, fit_power_law, ExponentFit, MIN_FIT_ROWS};
pub use l2::{markov_factor_l2, operator_matrix, L2Factor};
pub use operator::{HopTerm, Operator};
pub use search::{markov_factor_corpus, markov_factor_search, SearchConfig, SearchResult};
pub use table::{Certification, MarkovTable, TableRow, CSV_HEADER};
