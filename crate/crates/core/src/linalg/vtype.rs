//! The type `σ(x; A) = limsup ‖A^n x‖^{1/n}` of a vector and the norms of
//! the spaces `E_α(A)` built on it.
//!
//! `σ` is read off exactly from the Newton polygon of the minimal polynomial
//! of `x`: it is the largest absolute value of a root. The same polygon gives
//! a certified orbit bound `v(A^n x) ≥ γ + n·(−σ_exp)` with
//! `γ = min_{i<d} (v(A^i x) + i·σ_exp)`, by induction along the recurrence
//! `A^n x = −Σ μ_i A^{n−d+i} x`, since `v(μ_i) ≥ (d − i)·(−σ_exp)`.

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, LinearOperator, Norm, OrbitBound};
use crate::error::{Error, Result};
use crate::linalg::krylov::minimal_polynomial;
use crate::linalg::matrix::{mat_apply, sup_norm, PMatrix, PVector};
use crate::linalg::newton::{dominant_slope, newton_polygon, NewtonPolygon};
use crate::padic::ExtRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeMethod {
    NewtonPolygon,
    Empirical,
    /// Upper bound `σ ≤ ‖A‖` from an operator-norm estimate.
    NormBound,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeCertificate {
    /// `σ = p^{sigma_exp}`; `−∞` encodes `σ = 0`.
    pub sigma_exp: ExtRational,
    /// Valuations (lower bounds where uncertified) of the minimal polynomial
    /// coefficients, constant term first.
    pub minpoly_valuations: Vec<ExtRational>,
    pub krylov_degree: usize,
    pub method: TypeMethod,
    /// `γ` of the orbit bound `v(A^n x) ≥ γ − n·sigma_exp`.
    pub orbit_gamma: ExtRational,
    #[serde(skip)]
    pub polygon: Option<NewtonPolygon>,
}

pub fn vector_type(a: &PMatrix, x: &PVector) -> Result<TypeCertificate> {
    let mu = minimal_polynomial(a, x)?;
    let d = mu.degree();
    // a coefficient lost to cancellation can leave the small roots
    // unresolved; the largest one is all the type needs
    let (sigma_exp, polygon) = match newton_polygon(&mu.coeffs) {
        Ok(polygon) if polygon.zero_roots == d => (ExtRational::NegInf, Some(polygon)),
        Ok(polygon) => (-polygon.min_root_valuation(), Some(polygon)),
        Err(Error::PrecisionExhausted(_)) => (dominant_slope(&mu.coeffs)?, None),
        Err(e) => return Err(e),
    };
    let mut gamma = ExtRational::PosInf;
    for (i, v) in mu.krylov.iter().enumerate() {
        let val = -sup_norm(v)?;
        let shifted = if sigma_exp.is_finite() { val + sigma_exp.scale_int(i as i64) } else { val };
        gamma = gamma.min(shifted);
    }
    Ok(TypeCertificate {
        sigma_exp,
        minpoly_valuations: mu.coeffs.iter().map(|c| c.valuation_lower_bound()).collect(),
        krylov_degree: d,
        method: TypeMethod::NewtonPolygon,
        orbit_gamma: gamma,
        polygon,
    })
}

/// `x ∈ ⋂_{α>0} E_α(A)`: the orbit of `x` reaches zero.
pub fn entire_vector_check(a: &PMatrix, x: &PVector) -> Result<bool> {
    Ok(vector_type(a, x)?.sigma_exp == ExtRational::NegInf)
}

/// Finite-data estimate of `log_p σ`: the largest `log_p ‖A^n x‖ / n` over
/// the upper half `n ∈ [n_max/2, n_max]` of the orbit. Independent of the
/// Krylov route; used as an oracle.
pub fn orbit_growth_estimate(a: &PMatrix, x: &PVector, n_max: usize) -> Result<ExtRational> {
    let mut v = x.clone();
    let mut best = ExtRational::NegInf;
    for n in 1..=n_max {
        v = mat_apply(a, &v)?;
        if v.is_exact_zero() {
            break;
        }
        if 2 * n >= n_max {
            let e = v.norm();
            if e.exponent.is_finite() {
                best = best.max(e.exponent.div_int(n as i64));
            }
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EAlphaNorm {
    pub exponent: ExtRational,
    pub certified: bool,
    /// The sup was attained at this power of `A`.
    pub argmax: usize,
    pub terms_examined: usize,
}

/// Longest orbit segment examined at the boundary `α = σ`.
const BOUNDARY_WINDOW: usize = 64;
const MAX_TERMS: usize = 100_000;

/// `‖x‖_α = sup_n ‖A^n x‖/α^n` with `α = p^{alpha_exp}`.
///
/// For `α > σ` the orbit bound makes the terms eventually fall below any
/// observed value, so the sup is located exactly. At `α = σ` the result is
/// certified only when an observed term already meets the orbit bound;
/// otherwise it is a lower bound.
pub fn e_alpha_norm(a: &PMatrix, x: &PVector, alpha_exp: ExtRational) -> Result<EAlphaNorm> {
    if !alpha_exp.is_finite() {
        return Err(Error::InvalidProblem(format!("alpha exponent must be finite, got {alpha_exp}")));
    }
    if x.is_exact_zero() {
        return Ok(EAlphaNorm { exponent: ExtRational::NegInf, certified: true, argmax: 0, terms_examined: 1 });
    }
    let cert = vector_type(a, x)?;
    let sigma = cert.sigma_exp;
    if alpha_exp < sigma {
        return Err(Error::DivergentNorm { alpha: alpha_exp.to_string(), sigma: sigma.to_string() });
    }
    let mut best = Norm { exponent: ExtRational::NegInf, certified: true };
    let mut argmax = 0;
    let mut loose_max = ExtRational::NegInf;
    let mut v = x.clone();
    let mut n = 0usize;
    loop {
        let term = v.norm();
        let t = term.exponent - alpha_exp.scale_int(n as i64);
        if term.certified {
            if t > best.exponent {
                best.exponent = t;
                argmax = n;
            }
        } else {
            loose_max = loose_max.max(t);
        }
        n += 1;
        // bound on every term with index ≥ n
        let tail = if sigma == ExtRational::NegInf {
            if n >= cert.krylov_degree {
                ExtRational::NegInf
            } else {
                ExtRational::PosInf
            }
        } else {
            -cert.orbit_gamma + (sigma - alpha_exp).scale_int(n as i64)
        };
        if tail <= best.exponent.max(loose_max) {
            break;
        }
        if n >= MAX_TERMS {
            return Err(Error::PrecisionExhausted(format!("E_alpha sup not located within {MAX_TERMS} terms")));
        }
        if alpha_exp == sigma && n >= BOUNDARY_WINDOW.max(4 * cert.krylov_degree) {
            best.certified = false;
            break;
        }
        v = mat_apply(a, &v)?;
    }
    if loose_max > best.exponent {
        best.certified = false;
        best.exponent = loose_max;
    }
    Ok(EAlphaNorm { exponent: best.exponent, certified: best.certified, argmax, terms_examined: n })
}

impl LinearOperator for PMatrix {
    type Vector = PVector;

    fn apply(&self, x: &PVector) -> Result<PVector> {
        mat_apply(self, x)
    }

    fn orbit_bound(&self, x: &PVector) -> Result<OrbitBound> {
        let certificate = vector_type(self, x)?;
        let vanishes_from = (certificate.sigma_exp == ExtRational::NegInf).then_some(certificate.krylov_degree);
        Ok(OrbitBound { sigma_exp: certificate.sigma_exp, gamma: certificate.orbit_gamma, vanishes_from, certificate })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PAdicScalar;

    const CAP: u32 = 48;

    #[test]
    fn multiplication_by_half() {
        let a = PMatrix::from_rationals(&[vec![(1, 2)]], 2, CAP).unwrap();
        let x = PVector::from_ints(&[1], 2, CAP).unwrap();
        assert_eq!(vector_type(&a, &x).unwrap().sigma_exp, ExtRational::int(1));
    }

    #[test]
    fn nilpotent_has_type_zero() {
        let a = PMatrix::from_ints(&[vec![0, 1], vec![0, 0]], 3, CAP).unwrap();
        for x in [PVector::basis(3, 2, 0, CAP), PVector::from_ints(&[4, 7], 3, CAP).unwrap()] {
            assert_eq!(vector_type(&a, &x).unwrap().sigma_exp, ExtRational::NegInf);
            assert!(entire_vector_check(&a, &x).unwrap());
        }
    }

    #[test]
    fn square_root_growth() {
        let a = PMatrix::from_ints(&[vec![0, 1], vec![2, 0]], 2, CAP).unwrap();
        let x = PVector::basis(2, 2, 0, CAP);
        let cert = vector_type(&a, &x).unwrap();
        assert_eq!(cert.sigma_exp, ExtRational::new(-1, 2));
        assert_eq!(cert.krylov_degree, 2);
        // brute-force limsup of log_2 ‖A^n x‖ / n over n ≤ 200
        let est = orbit_growth_estimate(&a, &x, 200).unwrap();
        assert!((est.to_f64() - (-0.5)).abs() < 0.01);
    }

    #[test]
    fn identity_is_not_entire() {
        let a = PMatrix::identity(5, 3, CAP);
        assert!(!entire_vector_check(&a, &PVector::basis(5, 3, 1, CAP)).unwrap());
    }

    #[test]
    fn block_nilpotent_support() {
        // diag(N, I) with N the 2x2 shift
        let a = PMatrix::from_ints(&[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 1]], 7, CAP).unwrap();
        let x = PVector::from_ints(&[3, 5, 0], 7, CAP).unwrap();
        assert!(entire_vector_check(&a, &x).unwrap());
        let y = PVector::from_ints(&[3, 5, 1], 7, CAP).unwrap();
        assert!(!entire_vector_check(&a, &y).unwrap());
    }

    #[test]
    fn e_alpha_decaying_terms() {
        let p = 3;
        let a = PMatrix::diagonal(vec![PAdicScalar::from_int(3, p, CAP).unwrap(); 2]).unwrap();
        let x = PVector::from_rationals(&[(1, 9), (2, 1)], p, CAP).unwrap();
        let r = e_alpha_norm(&a, &x, ExtRational::ZERO).unwrap();
        assert!(r.certified);
        assert_eq!(r.argmax, 0);
        assert_eq!(r.exponent, sup_norm(&x).unwrap());
    }

    #[test]
    fn e_alpha_at_the_boundary_with_constant_terms() {
        let p = 5;
        let a = PMatrix::from_rationals(&[vec![(1, 5)]], p, CAP).unwrap();
        let x = PVector::from_ints(&[7], p, CAP).unwrap();
        let r = e_alpha_norm(&a, &x, ExtRational::int(1)).unwrap();
        assert!(r.certified);
        assert_eq!(r.exponent, ExtRational::ZERO);
    }

    #[test]
    fn e_alpha_nilpotent_is_a_finite_max() {
        let p = 2;
        let a = PMatrix::from_ints(&[vec![0, 8], vec![0, 0]], p, CAP).unwrap();
        let x = PVector::from_ints(&[0, 1], p, CAP).unwrap();
        // terms: ‖x‖ = 1, ‖Ax‖·α^{-1} = 2^{-3}·2^{-alpha}
        let r = e_alpha_norm(&a, &x, ExtRational::int(-5)).unwrap();
        assert!(r.certified);
        assert_eq!(r.exponent, ExtRational::int(2));
        assert_eq!(r.argmax, 1);
    }

    #[test]
    fn e_alpha_below_type_diverges() {
        let a = PMatrix::from_rationals(&[vec![(1, 2)]], 2, CAP).unwrap();
        let x = PVector::from_ints(&[1], 2, CAP).unwrap();
        assert!(matches!(e_alpha_norm(&a, &x, ExtRational::ZERO), Err(Error::DivergentNorm { .. })));
    }
}
