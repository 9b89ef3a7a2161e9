//! Norms on polynomials: sup norms on compact sets, `L^s` norms of
//! probability measures, and the weighted and derivative-based families.

mod lp;
pub mod measure;
mod nikolskii;
mod qms;
pub mod sets;
mod spec;
mod spectral;
pub mod sup;

pub use lp::lp_norm;
pub use measure::{Measure, Weight};
pub use nikolskii::{fit_nikolskii, nikolskii_sandwich, NikolskiiCertificate, SandwichCheck, Witness, SANDWICH_SLACK};
pub use qms::{qms_ln_from_coeffs, qms_ln_norm, qms_norm, qms_norm_exact, QmsExact, RationalParam};
pub use sets::{CompactSet, Interval, Piece, RegionPredicate, SampledRegion};
pub use spec::NormSpec;
pub use spectral::{spectral_norm_estimate, SpectralEstimate};
pub use sup::{sup_multi, sup_thickened, sup_uni};

pub(crate) use spectral::linear_fit;
