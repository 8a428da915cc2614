//! Analytic functions on a p-adic polydisk `max_i |x_i|_p ≤ ρ`, as
//! truncated multivariate series, and differential operators acting on them.

mod diffop;
mod multi;

pub use diffop::{derivative_multi, diffop_apply, diffop_norm_bound, pde_problem, pde_solve, DiffOp};
pub use multi::{a_rho_norm, multiply, partial_derivative, total_degree, MultiIndex, MultiSeries};

use num_rational::Ratio;

use crate::padic::{ExtRational, PAdicScalar};

/// `max_i |x_i|_p ≤ ρ = p^{rho_exp}`, i.e. `v(x_i) ≥ −rho_exp` for every
/// coordinate. The Euclidean combination `(Σ |x_i|_p²)^{1/2} ≤ ρ` cuts out a
/// smaller set once there are two or more variables, but the coefficient
/// condition `|f_α| ρ^{|α|} → 0`, and with it every norm here, is the same
/// for both; membership uses the max.
///
/// A ball whose valuation is uncertain counts as inside only when its lower
/// bound already decides it.
pub fn polydisk_contains(x: &[PAdicScalar], rho_exp: Ratio<i64>) -> bool {
    let bound = -ExtRational::Finite(rho_exp);
    x.iter().all(|c| c.valuation_lower_bound() >= bound)
}
