use thiserror::Error;

/// Errors raised by the polynomial, norm and exponent machinery.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("differential operator polynomial must be homogeneous of degree >= 1")]
    NonHomogeneousOperator,

    #[error("coefficient overflow in floating point arithmetic ({0}); retry in exact or log-domain mode")]
    PrecisionOverflow(&'static str),

    #[error("degree {degree} is beyond the quadrature budget {budget}")]
    DegreeBeyondBudget { degree: usize, budget: usize },

    #[error("degree {degree} exceeds the orthonormal system's nmax = {nmax}")]
    DegreeExceedsSystem { degree: usize, nmax: usize },

    #[error("loss of orthogonality at degree {degree}: Gram deviation {deviation:e}")]
    OrthogonalityLoss { degree: usize, deviation: f64 },

    #[error("polynomial limits exceeded: {0}")]
    LimitExceeded(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation not supported: {0}")]
    Unsupported(String),

    #[error("fit needs at least {needed} usable rows, found {found}")]
    TooFewRows { needed: usize, found: usize },

    #[error("norm is not spectral on monomials: {0}")]
    NotSpectral(String),

    #[error("exact magnitude is irrational for coefficient {0}")]
    InexactMagnitude(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
