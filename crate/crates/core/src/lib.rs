pub mod artifact;
pub mod error;
pub mod exponents;
pub mod norms;
pub mod orthopoly;
pub mod polycore;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

/// Book chapters, compiled as doctests so their snippets stay current.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/norms.md")]
    mod norms {}
    #[doc = include_str!("../../../book/src/factors.md")]
    mod factors {}
    #[doc = include_str!("../../../book/src/orthopoly.md")]
    mod orthopoly {}
    #[doc = include_str!("../../../book/src/exponents.md")]
    mod exponents {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
