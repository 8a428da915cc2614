//! Exact p-adic power-series solutions of the Cauchy problem
//! `y^(m)(z) = A y(z)`, `y^(k)(0) = y_k`, for bounded operators `A` on
//! `Q_p^d` and on spaces of analytic functions on a p-adic polydisk.
//!
//! The solution is the finite sum of Mittag-Leffler series
//! `F_k(z; A) y_k = Σ_n z^{mn+k} A^n y_k / (mn+k)!`. Every radius and norm is
//! returned as an exact rational exponent ([`padic::ExtRational`]); scalars
//! carry certified precision ([`padic::PAdicScalar`]).

pub mod carrier;
pub mod cauchy;
pub mod error;
pub mod fnspace;
pub mod json;
pub mod linalg;
pub mod mittag;
pub mod padic;
pub mod series;

pub use carrier::{Carrier, LinearOperator, Norm, OrbitBound};
pub use error::{Error, Result};

// The README and guide code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/types.md")]
    mod types {}
    #[doc = include_str!("../../../book/src/series.md")]
    mod series {}
    #[doc = include_str!("../../../book/src/mittag_leffler.md")]
    mod mittag_leffler {}
    #[doc = include_str!("../../../book/src/cauchy.md")]
    mod cauchy {}
    #[doc = include_str!("../../../book/src/pde.md")]
    mod pde {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
