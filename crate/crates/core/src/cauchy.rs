//! The Cauchy problem `y^{(m)}(z) = A y(z)`, `y^{(k)}(0) = y_k` (`k < m`).
//!
//! Its solution is `y(z) = Σ_k F_k(z; A) y_k`, and its coefficients are
//! forced by `A^n y_k = (mn+k)! c_{mn+k}`, so the solution is unique. The
//! `m` Mittag-Leffler builds are independent and run in parallel; they are
//! merged in index order, so the output does not depend on scheduling.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::carrier::{Carrier, LinearOperator};
use crate::error::{Error, Result};
use crate::linalg::{e_alpha_norm, entire_vector_check, PMatrix, PVector, TypeCertificate};
use crate::mittag::{ml_radius, ml_series, MLSpec};
use crate::padic::{ExtRational, PAdicScalar};
use crate::series::{ar_norm, series_derivative, BSeries};

#[derive(Debug, Clone)]
pub struct CauchyProblem<Op: LinearOperator> {
    pub operator: Op,
    pub order: usize,
    pub initial_data: Vec<Op::Vector>,
    pub truncation_terms: usize,
}

impl<Op: LinearOperator> CauchyProblem<Op> {
    pub fn new(operator: Op, order: usize, initial_data: Vec<Op::Vector>, truncation_terms: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidProblem("the order m must be at least 1".into()));
        }
        if initial_data.len() != order {
            return Err(Error::DimensionMismatch { expected: order, got: initial_data.len() });
        }
        let p = initial_data[0].prime();
        if let Some(bad) = initial_data.iter().find(|y| y.prime() != p) {
            return Err(Error::PrimeMismatch(p, bad.prime()));
        }
        // shape check: the data must be mutually addable
        for y in &initial_data[1..] {
            initial_data[0].try_sub(y)?;
        }
        Ok(CauchyProblem { operator, order, initial_data, truncation_terms })
    }

    pub fn prime(&self) -> u32 {
        self.initial_data[0].prime()
    }
}

#[derive(Debug, Clone)]
pub struct CauchySolution<V: Carrier> {
    pub series: BSeries<V>,
    /// Certified lower bound `r ≥ p^{−radius_threshold}` on the radius.
    pub radius_threshold: ExtRational,
    /// Type certificate of each `y_k`; `None` for `y_k = 0`.
    pub per_k_types: Vec<Option<TypeCertificate>>,
    /// `τ_k = sigma_exp(y_k)/m + 1/(p−1)`; `−∞` for a terminating orbit.
    pub per_k_thresholds: Vec<ExtRational>,
}

/// Thread count for the per-k builds; `None` uses the global pool.
#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    pub threads: Option<usize>,
}

pub fn solve<Op: LinearOperator>(problem: &CauchyProblem<Op>) -> Result<CauchySolution<Op::Vector>> {
    solve_with(problem, SolveOptions::default())
}

pub fn solve_with<Op: LinearOperator>(
    problem: &CauchyProblem<Op>,
    options: SolveOptions,
) -> Result<CauchySolution<Op::Vector>> {
    let m = problem.order;
    let build = || -> Vec<Result<_>> {
        (0..m)
            .into_par_iter()
            .map(|k| {
                let spec = MLSpec::new(m, k, problem.truncation_terms)?;
                ml_series(&problem.operator, &problem.initial_data[k], &spec)
            })
            .collect()
    };
    let parts = match options.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidProblem(format!("thread pool: {e}")))?
            .install(build),
        None => build(),
    };
    let mut series: Option<BSeries<Op::Vector>> = None;
    let mut per_k_types = Vec::with_capacity(m);
    let mut per_k_thresholds = Vec::with_capacity(m);
    for part in parts {
        let part = part?;
        // a terminated orbit carries the zero tail, threshold −∞
        let tau = part.series.tail().map_or(ExtRational::PosInf, |t| t.threshold());
        per_k_thresholds.push(tau);
        per_k_types.push(part.orbit.map(|o| o.certificate));
        series = Some(match series {
            None => part.series,
            Some(acc) => acc.try_add(&part.series)?,
        });
    }
    let radius_threshold = per_k_thresholds.iter().copied().max().unwrap_or(ExtRational::NegInf);
    Ok(CauchySolution { series: series.expect("order is at least 1"), radius_threshold, per_k_types, per_k_thresholds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualEntry {
    pub n: usize,
    pub k: usize,
    pub pass: bool,
    /// Valuation lower bound of the defect; `+∞` when it vanishes.
    pub defect_exponent: ExtRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermwiseEntry {
    /// Coefficient index `j` of `y^{(m)} − Ay`.
    pub index: usize,
    pub pass: bool,
    pub defect_exponent: ExtRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    /// `(mn+k)!·c_{mn+k} = A^n y_k`.
    pub recurrence: Vec<ResidualEntry>,
    /// `y^{(m)} = Ay`, coefficientwise.
    pub termwise: Vec<TermwiseEntry>,
    /// `y^{(k)}(0) = y_k`, reported with `n = 0`.
    pub initial: Vec<ResidualEntry>,
    pub pass: bool,
}

impl ResidualReport {
    pub fn failures(&self) -> Vec<(usize, usize)> {
        self.recurrence.iter().filter(|e| !e.pass).map(|e| (e.n, e.k)).collect()
    }
}

fn defect<V: Carrier>(a: &V, b: &V) -> Result<ExtRational> {
    let d = a.try_sub(b)?;
    Ok(if d.vanishes() { ExtRational::PosInf } else { -d.norm().exponent })
}

/// Checks the coefficient identities of a solution. Mismatches are reported,
/// not raised; errors come only from shape or prime mismatches.
pub fn verify_residual<Op: LinearOperator>(
    sol: &CauchySolution<Op::Vector>,
    problem: &CauchyProblem<Op>,
) -> Result<ResidualReport> {
    let m = problem.order;
    let c = sol.series.coeffs();
    let t = sol.series.truncation();
    let mut recurrence = Vec::new();
    let mut initial = Vec::new();
    for (k, yk) in problem.initial_data.iter().enumerate() {
        let mut v = yk.clone();
        let mut fact: BigInt = (1..=k).map(BigInt::from).product();
        let mut n = 0;
        while m * n + k <= t {
            if n > 0 {
                v = problem.operator.apply(&v)?;
                for j in m * (n - 1) + k + 1..=m * n + k {
                    fact *= j;
                }
            }
            let d = defect(&c[m * n + k].mul_int(&fact), &v)?;
            recurrence.push(ResidualEntry { n, k, pass: d == ExtRational::PosInf, defect_exponent: d });
            if n == 0 {
                initial.push(ResidualEntry { n, k, pass: d == ExtRational::PosInf, defect_exponent: d });
            }
            n += 1;
        }
        if k > t {
            initial.push(ResidualEntry { n: 0, k, pass: false, defect_exponent: ExtRational::NegInf });
        }
    }
    let mut termwise = Vec::new();
    if t >= m {
        let dm = series_derivative(&sol.series, m)?;
        for (j, lhs) in dm.coeffs().iter().enumerate() {
            let rhs = problem.operator.apply(&c[j])?;
            let d = defect(lhs, &rhs)?;
            termwise.push(TermwiseEntry { index: j, pass: d == ExtRational::PosInf, defect_exponent: d });
        }
    }
    let pass = recurrence.iter().chain(&initial).all(|e| e.pass) && termwise.iter().all(|e| e.pass);
    Ok(ResidualReport { recurrence, termwise, initial, pass })
}

fn check_r(alpha_exp: ExtRational, m: usize, p: u32, tau_r: ExtRational) -> Result<()> {
    if !alpha_exp.is_finite() {
        return Err(Error::InvalidProblem(format!("alpha exponent must be finite, got {alpha_exp}")));
    }
    let limit = ml_radius(alpha_exp, m, p);
    if tau_r <= limit {
        return Err(Error::InvalidProblem(format!(
            "r = p^(-{tau_r}) is not inside alpha^(-1/m) p^(-1/(p-1)) = p^(-{limit})"
        )));
    }
    Ok(())
}

/// The exponent of `p^{−1/(p−1)} max_k α^{−k/m} ‖y_{i,k} − y_k‖_α`, where
/// `perturbations[k]` is the exponent of `‖y_{i,k} − y_k‖_α`. Valid input
/// needs `r < α^{−1/m} p^{−1/(p−1)}`, i.e. `tau_r > alpha_exp/m + 1/(p−1)`.
pub fn wellposedness_bound(
    alpha_exp: ExtRational,
    perturbations: &[ExtRational],
    m: usize,
    p: u32,
    tau_r: ExtRational,
) -> Result<ExtRational> {
    check_r(alpha_exp, m, p, tau_r)?;
    let a = alpha_exp.finite().expect("checked finite");
    let mut best = ExtRational::NegInf;
    for (k, &e) in perturbations.iter().enumerate() {
        if e == ExtRational::NegInf {
            continue;
        }
        best = best.max(e - ExtRational::Finite(a * k as i64 / m as i64));
    }
    if best == ExtRational::NegInf {
        return Ok(best);
    }
    Ok(best - ExtRational::inv_p_minus_one(p))
}

/// The bound above with the `n = k = 0` term restored: there `|0!|_p = 1`,
/// so the difference contributes `‖y_{i,0} − y_0‖` without the
/// `p^{−1/(p−1)}` gain. `delta0_norm` is the exponent of that plain norm.
pub fn corrected_wellposedness_bound(
    alpha_exp: ExtRational,
    perturbations: &[ExtRational],
    delta0_norm: ExtRational,
    m: usize,
    p: u32,
    tau_r: ExtRational,
) -> Result<ExtRational> {
    Ok(wellposedness_bound(alpha_exp, perturbations, m, p, tau_r)?.max(delta0_norm))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WellPosednessReport {
    pub alpha_exp: ExtRational,
    pub tau_r: ExtRational,
    /// Exponents of `‖y_{i,k} − y_k‖_α`.
    pub perturbation_exponents: Vec<ExtRational>,
    pub perturbations_certified: bool,
    pub bound_exponent: ExtRational,
    pub corrected_bound_exponent: ExtRational,
    /// Exponent of `‖y_i − y‖_r`.
    pub observed_exponent: ExtRational,
    pub observed_certified: bool,
    pub holds: bool,
    pub corrected_holds: bool,
}

/// `w − u` entrywise, with identical balls giving an exact zero: the same
/// input (or a coefficient computed from the same input) is unperturbed, not
/// perturbed by an unknown amount below the precision.
fn exact_difference(u: &PVector, w: &PVector) -> Result<PVector> {
    let entries = u
        .entries()
        .iter()
        .zip(w.entries())
        .map(|(a, b)| if a == b { Ok(PAdicScalar::exact_zero(a.prime())) } else { b.try_sub(a) })
        .collect::<Result<_>>()?;
    PVector::new(entries)
}

/// Solves with `y` and `y_perturbed` and compares `‖y_i − y‖_r` with the
/// well-posedness bound, for a matrix operator.
pub fn wellposedness_check(
    a: &PMatrix,
    m: usize,
    y: &[PVector],
    y_perturbed: &[PVector],
    truncation_terms: usize,
    alpha_exp: ExtRational,
    tau_r: ExtRational,
) -> Result<WellPosednessReport> {
    let base = CauchyProblem::new(a.clone(), m, y.to_vec(), truncation_terms)?;
    let pert = CauchyProblem::new(a.clone(), m, y_perturbed.to_vec(), truncation_terms)?;
    let p = base.prime();
    check_r(alpha_exp, m, p, tau_r)?;
    let mut perturbation_exponents = Vec::with_capacity(m);
    let mut perturbations_certified = true;
    for (u, w) in y.iter().zip(y_perturbed) {
        let d = exact_difference(u, w)?;
        let n = e_alpha_norm(a, &d, alpha_exp)?;
        perturbations_certified &= n.certified;
        perturbation_exponents.push(n.exponent);
    }
    let delta0 = exact_difference(&y[0], &y_perturbed[0])?.norm().exponent;
    let bound_exponent = wellposedness_bound(alpha_exp, &perturbation_exponents, m, p, tau_r)?;
    let corrected_bound_exponent =
        corrected_wellposedness_bound(alpha_exp, &perturbation_exponents, delta0, m, p, tau_r)?;
    let (ys, ws) = (solve(&base)?.series, solve(&pert)?.series);
    let coeffs = ys.coeffs().iter().zip(ws.coeffs()).map(|(u, w)| exact_difference(u, w)).collect::<Result<_>>()?;
    let diff = BSeries::new(coeffs, ws.try_sub(&ys)?.tail())?;
    let observed = ar_norm(&diff, tau_r);
    Ok(WellPosednessReport {
        alpha_exp,
        tau_r,
        perturbation_exponents,
        perturbations_certified,
        bound_exponent,
        corrected_bound_exponent,
        observed_exponent: observed.exponent,
        observed_certified: observed.certified,
        holds: observed.exponent <= bound_exponent,
        corrected_holds: observed.exponent <= corrected_bound_exponent,
    })
}

/// The solution is entire iff every `y_k` lies in `⋂_{α>0} E_α(A)`.
pub fn entire_solution_check(a: &PMatrix, initial_data: &[PVector]) -> Result<bool> {
    for y in initial_data {
        if !y.is_exact_zero() && !entire_vector_check(a, y)? {
            return Ok(false);
        }
    }
    Ok(true)
}
