//! Riemann-zero counting functions and the scattering determinants they map onto.
//!
//! The crate is organised as a chain:
//!
//! * [`specfun`]: complex ln Γ, the Riemann–Siegel theta, gamma-ratio phases,
//!   Hardy's Z and ζ on the critical line.
//! * [`zeroscan`]: zeros of Z by sign scanning, zero catalogs, the exact
//!   counting function N(E) and its fluctuation S(E).
//! * [`countmodels`]: smooth two-term counting models, zero estimates and
//!   comparison against a catalog.
//! * [`scatter`]: the inverted harmonic oscillator and its far-field phase,
//!   Krein quantization of a scatterer chain, the 1×1 KKR determinant and the
//!   Kronig–Penney model with Lloyd's formula.
//!
//! The guide in `book/` walks through each of these with runnable snippets;
//! its code blocks are compiled as doc-tests of this crate.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::too_many_arguments)]

pub mod countmodels;
pub mod error;
pub mod roots;
pub mod scatter;
pub mod specfun;
pub mod zeroscan;

pub use error::{Error, Result};

// `cargo test --doc` runs every snippet in the guide.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(intro, "introduction.md");
    chapter!(special_functions, "special-functions.md");
    chapter!(zeros, "zeros.md");
    chapter!(counting_models, "counting-models.md");
    chapter!(scattering_phase, "scattering-phase.md");
    chapter!(krein_kkr, "krein-kkr.md");
    chapter!(kronig_penney, "kronig-penney.md");
    chapter!(cli, "cli.md");
}
