use std::collections::BTreeMap;

use crate::carrier::{Carrier, LinearOperator, OrbitBound};
use crate::cauchy::{solve, CauchyProblem, CauchySolution};
use crate::error::{Error, Result};
use crate::fnspace::multi::{a_rho_norm, multiply, partial_derivative, total_degree, MultiIndex, MultiSeries};
use crate::linalg::{TypeCertificate, TypeMethod};
use crate::padic::ExtRational;

/// `f ↦ Σ_β a_β(x) D^β f` on `𝒜_ρ`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffOp {
    terms: BTreeMap<MultiIndex, MultiSeries>,
}

impl DiffOp {
    pub fn new(terms: impl IntoIterator<Item = (MultiIndex, MultiSeries)>) -> Result<Self> {
        let terms: BTreeMap<_, _> = terms.into_iter().collect();
        let Some(first) = terms.values().next() else {
            return Err(Error::InvalidProblem("a differential operator needs a term".into()));
        };
        for (beta, a) in &terms {
            first.check_compatible(a)?;
            if beta.len() != first.nvars() {
                return Err(Error::DimensionMismatch { expected: first.nvars(), got: beta.len() });
            }
        }
        Ok(DiffOp { terms })
    }

    pub fn terms(&self) -> &BTreeMap<MultiIndex, MultiSeries> {
        &self.terms
    }

    /// `M = max |β|`.
    pub fn order(&self) -> usize {
        self.terms.keys().map(|b| total_degree(b)).max().unwrap_or(0)
    }

    fn sample(&self) -> &MultiSeries {
        self.terms.values().next().expect("nonempty")
    }
}

/// `D^β f`.
pub fn derivative_multi(f: &MultiSeries, beta: &[u32]) -> Result<MultiSeries> {
    let mut g = f.clone();
    for (j, &b) in beta.iter().enumerate() {
        for _ in 0..b {
            g = partial_derivative(&g, j)?;
        }
    }
    Ok(g)
}

pub fn diffop_apply(a: &DiffOp, f: &MultiSeries) -> Result<MultiSeries> {
    a.sample().check_compatible(f)?;
    let order = a.order();
    if f.exact_upto() < order {
        return Err(Error::InsufficientDegree { needed: order as u32, have: f.valid_degree() as u32 });
    }
    let mut out = f.zero_like();
    for (beta, coeff) in &a.terms {
        out = out.try_add(&multiply(coeff, &derivative_multi(f, beta)?)?)?;
    }
    // the coefficients have small degree bounds; keep the operand's
    Ok(out.with_degree(f.degree()))
}

/// `max_β (‖a_β‖_ρ exponent − s·|β|)`, the exponent of
/// `max_β ρ^{−|β|} ‖a_β‖_ρ ≥ ‖A‖`.
pub fn diffop_norm_bound(a: &DiffOp) -> ExtRational {
    let s = ExtRational::Finite(a.sample().rho_exp());
    a.terms
        .iter()
        .map(|(beta, c)| {
            let e = a_rho_norm(c).exponent;
            if e == ExtRational::NegInf {
                e
            } else {
                e - s.scale_int(total_degree(beta) as i64)
            }
        })
        .max()
        .unwrap_or(ExtRational::NegInf)
}

impl LinearOperator for DiffOp {
    type Vector = MultiSeries;

    fn apply(&self, x: &MultiSeries) -> Result<MultiSeries> {
        diffop_apply(self, x)
    }

    /// `‖A^n x‖ ≤ ‖A‖^n ‖x‖` with the coefficient norm bound for `‖A‖`.
    fn orbit_bound(&self, x: &MultiSeries) -> Result<OrbitBound> {
        let sigma_exp = diffop_norm_bound(self);
        let gamma = -a_rho_norm(x).exponent;
        let vanishes_from = (sigma_exp == ExtRational::NegInf).then_some(1);
        Ok(OrbitBound {
            sigma_exp,
            gamma,
            vanishes_from,
            certificate: TypeCertificate {
                sigma_exp,
                minpoly_valuations: Vec::new(),
                krylov_degree: 0,
                method: TypeMethod::NormBound,
                orbit_gamma: gamma,
                polygon: None,
            },
        })
    }
}

/// `∂^m u/∂t^m = A u`, `∂^k u/∂t^k (0, x) = φ_k(x)`, solved as a series in
/// `t` with coefficients in `𝒜_ρ`.
///
/// Each application of `A` consumes `M = max|β|` degrees of a truncated
/// operand, so the data are carried to degree
/// `output_degree + truncation_terms·M`; every stored coefficient of the
/// result is then exact up to `output_degree`. Polynomial data are extended
/// for free, truncated data must already reach that degree.
pub fn pde_solve(
    m: usize,
    a: &DiffOp,
    initial: &[MultiSeries],
    truncation_terms: usize,
    output_degree: usize,
) -> Result<CauchySolution<MultiSeries>> {
    solve(&pde_problem(m, a, initial, truncation_terms, output_degree)?)
}

/// The problem [`pde_solve`] hands to the solver, with the data already
/// carried to the working degree.
pub fn pde_problem(
    m: usize,
    a: &DiffOp,
    initial: &[MultiSeries],
    truncation_terms: usize,
    output_degree: usize,
) -> Result<CauchyProblem<DiffOp>> {
    let work = output_degree + truncation_terms * a.order();
    let data = initial
        .iter()
        .map(|phi| {
            if phi.is_polynomial() {
                Ok(phi.with_degree(work.max(phi.degree())))
            } else if phi.valid_degree() >= work {
                Ok(phi.with_degree(work))
            } else {
                Err(Error::InsufficientDegree { needed: work as u32, have: phi.valid_degree() as u32 })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    CauchyProblem::new(a.clone(), m, data, truncation_terms)
}
