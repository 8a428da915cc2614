//! Mittag-Leffler functions `F_k(z; A)x = Σ_n z^{mn+k} A^n x / (mn+k)!`.
//!
//! The radius does not depend on `k`: with `σ = p^{sigma_exp}` the type of
//! `x`, the series converges exactly on `|z| < σ^{−1/m} p^{−1/(p−1)}`. The
//! tail certificate comes from the orbit bound `v(A^n x) ≥ γ − n·sigma_exp`
//! and `v_p(n!) ≤ n/(p−1)`, which together give
//! `v(c_{mn+k}) ≥ γ + k·sigma_exp/m − (mn+k)(sigma_exp/m + 1/(p−1))`.

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::Serialize;

use crate::carrier::{Carrier, LinearOperator, OrbitBound};
use crate::error::{Error, Result};
use crate::padic::{ExtRational, PAdicScalar};
use crate::series::{series_eval, BSeries, SeriesValue, TailBound};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MLSpec {
    pub m: usize,
    pub k: usize,
    /// Number of `A`-powers beyond the first, i.e. `n = 0..=truncation_terms`.
    pub truncation_terms: usize,
}

impl MLSpec {
    pub fn new(m: usize, k: usize, truncation_terms: usize) -> Result<Self> {
        if m == 0 || k >= m {
            return Err(Error::InvalidProblem(format!("need 0 <= k < m, got m = {m}, k = {k}")));
        }
        Ok(MLSpec { m, k, truncation_terms })
    }

    /// Index of the last stored `z`-power. It does not depend on `k`, so the
    /// series of one problem can be added termwise.
    pub fn series_truncation(&self) -> usize {
        self.m * (self.truncation_terms + 1) - 1
    }
}

/// `τ = sigma_exp/m + 1/(p−1)`, the threshold of `r = p^{−τ}`.
pub fn ml_radius(sigma_exp: ExtRational, m: usize, p: u32) -> ExtRational {
    match sigma_exp {
        ExtRational::Finite(s) => ExtRational::Finite(s / m as i64) + ExtRational::inv_p_minus_one(p),
        other => other,
    }
}

#[derive(Debug, Clone)]
pub struct MLSeries<V: Carrier> {
    pub series: BSeries<V>,
    /// `None` for `x = 0`.
    pub orbit: Option<OrbitBound>,
}

pub fn ml_series<Op: LinearOperator>(a: &Op, x: &Op::Vector, spec: &MLSpec) -> Result<MLSeries<Op::Vector>> {
    let MLSpec { m, k, truncation_terms } = *spec;
    let zero = x.zero_like();
    if x.is_exact_zero() {
        let series = BSeries::polynomial(vec![zero; spec.series_truncation() + 1])?;
        return Ok(MLSeries { series, orbit: None });
    }
    if x.vanishes() {
        return Err(Error::PrecisionExhausted("initial vector vanishes at working precision".into()));
    }
    let orbit = a.orbit_bound(x)?;
    let sigma = orbit.sigma_exp;
    if sigma == ExtRational::NegInf && orbit.vanishes_from.is_none() {
        return Err(Error::InvalidProblem("type zero without a vanishing index".into()));
    }
    // for a terminating orbit compute every nonzero term
    let n_terms = match orbit.vanishes_from {
        Some(d) => truncation_terms.max(d.saturating_sub(1)),
        None => truncation_terms,
    };
    let spec = MLSpec { m, k, truncation_terms: n_terms };
    let mut coeffs = vec![zero; spec.series_truncation() + 1];
    let mut v = x.clone();
    let mut fact: BigInt = (1..=k).map(BigInt::from).product();
    let mut terminated = orbit.vanishes_from.is_some();
    for j in 0..=n_terms {
        if j > 0 {
            v = a.apply(&v)?;
            for t in m * (j - 1) + k + 1..=m * j + k {
                fact *= t;
            }
        }
        if orbit.vanishes_from.is_some_and(|d| j >= d) {
            break;
        }
        if v.is_exact_zero() {
            terminated = true;
            break;
        }
        coeffs[m * j + k] = v.div_int(&fact)?;
    }
    let tail = if terminated {
        TailBound::ZERO
    } else {
        let s = sigma.finite().expect("finite type on a non-terminating orbit");
        TailBound {
            gamma: orbit.gamma + ExtRational::Finite(s * Ratio::new(k as i64, m as i64)),
            slope: -ml_radius(sigma, m, x.prime()),
        }
    };
    Ok(MLSeries { series: BSeries::new(coeffs, Some(tail))?, orbit: Some(orbit) })
}

pub fn ml_coefficients<Op: LinearOperator>(a: &Op, x: &Op::Vector, spec: &MLSpec) -> Result<BSeries<Op::Vector>> {
    Ok(ml_series(a, x, spec)?.series)
}

/// Certified value of `F_k(z; A)x`; `z` must lie in the open disk of
/// convergence.
pub fn ml_eval<Op: LinearOperator>(
    a: &Op,
    x: &Op::Vector,
    spec: &MLSpec,
    z: &PAdicScalar,
) -> Result<SeriesValue<Op::Vector>> {
    series_eval(&ml_coefficients(a, x, spec)?, z)
}

/// `F_k^{(i)}(·; A)x` as another Mittag-Leffler series:
/// `F_{k−i}(·; A)x` for `i ≤ k`; otherwise, with `i − k = ml + j`,
/// `F_0(·; A)A^l x` when `j = 0` and `F_{m−j}(·; A)A^{l+1}x` when `j > 0`.
/// The `A`-powers spent on the initial vector are taken from the truncation.
pub fn ml_derivative<Op: LinearOperator>(
    a: &Op,
    x: &Op::Vector,
    spec: &MLSpec,
    i: usize,
) -> Result<BSeries<Op::Vector>> {
    let MLSpec { m, k, truncation_terms } = *spec;
    let (new_k, powers) = if i <= k {
        (k - i, 0)
    } else {
        let (l, j) = ((i - k) / m, (i - k) % m);
        if j == 0 {
            (0, l)
        } else {
            (m - j, l + 1)
        }
    };
    let mut y = x.clone();
    for _ in 0..powers {
        y = a.apply(&y)?;
    }
    let spec = MLSpec { m, k: new_k, truncation_terms: truncation_terms.saturating_sub(powers) };
    ml_coefficients(a, &y, &spec)
}

/// Finite-data growth estimate `max log_p ‖c_n‖ / n` over the nonzero,
/// certified coefficients with index in `range`. Approaches the threshold
/// `τ` from below as the window moves out.
pub fn coefficient_growth<C: Carrier>(y: &BSeries<C>, range: std::ops::RangeInclusive<usize>) -> Option<ExtRational> {
    range
        .filter(|&n| n >= 1)
        .filter_map(|n| {
            let norm = y.coeff(n)?.norm();
            (norm.certified && norm.exponent.is_finite()).then(|| norm.exponent.div_int(n as i64))
        })
        .max()
}
