use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::linalg::matrix::{mat_apply, PMatrix, PVector};
use crate::padic::PAdicScalar;

/// The minimal polynomial of `x` under `A` together with the Krylov vectors
/// `x, Ax, …, A^{d-1}x` that span the cyclic subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalPolynomial {
    /// Monic coefficients, constant term first; the last entry is `1`.
    pub coeffs: Vec<PAdicScalar>,
    pub krylov: Vec<PVector>,
}

impl MinimalPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

struct Reduced {
    vector: PVector,
    pivot: usize,
    /// Coefficients expressing `vector` in the Krylov basis.
    combo: Vec<PAdicScalar>,
}

/// Least-degree monic `μ` with `μ(A)x = 0`, found by eliminating along the
/// Krylov sequence. Each new vector is reduced against the previous pivots;
/// a fresh pivot is the entry of smallest valuation, lowest row on ties.
/// Dependence is declared when every entry of the reduced vector vanishes at
/// working precision.
pub fn minimal_polynomial(a: &PMatrix, x: &PVector) -> Result<MinimalPolynomial> {
    if x.is_exact_zero() || x.vanishes() {
        return Err(Error::InvalidProblem("minimal polynomial of the zero vector".into()));
    }
    let p = x.prime();
    let cap = x.entries().iter().filter_map(PAdicScalar::relative_precision).max().unwrap_or(64) as u32;
    let mut echelon: Vec<Reduced> = Vec::new();
    let mut krylov: Vec<PVector> = Vec::new();
    let mut current = x.clone();
    for j in 0..=a.dim() {
        let mut r = current.clone();
        let mut combo = vec![PAdicScalar::exact_zero(p); j + 1];
        combo[j] = PAdicScalar::one(p, cap);
        for red in &echelon {
            let f = r.entry(red.pivot).try_div(red.vector.entry(red.pivot))?;
            if f.is_exact_zero() {
                continue;
            }
            r = r.try_sub(&red.vector.scale(&f)?)?;
            for (c, e) in combo.iter_mut().zip(&red.combo) {
                *c = c.try_sub(&e.try_mul(&f)?)?;
            }
        }
        krylov.push(current.clone());
        if r.vanishes() {
            krylov.pop();
            return Ok(MinimalPolynomial { coeffs: combo, krylov });
        }
        let pivot = r
            .entries()
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.int_valuation().map(|v| (v, i)))
            .min()
            .map(|(_, i)| i)
            .expect("non-vanishing vector has a certified entry");
        echelon.push(Reduced { vector: r, pivot, combo });
        current = mat_apply(a, &current)?;
    }
    Err(Error::PrecisionExhausted("Krylov sequence did not become dependent within the dimension".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u32 = 32;

    fn ints(v: &[i64], p: u32) -> Vec<PAdicScalar> {
        v.iter().map(|&a| PAdicScalar::from_int(a, p, CAP).unwrap()).collect()
    }

    fn agree(a: &[PAdicScalar], b: &[PAdicScalar]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.agrees_with(y).unwrap())
    }

    #[test]
    fn scalar_matrix() {
        let a = PMatrix::diagonal(ints(&[6, 6, 6], 5)).unwrap();
        let x = PVector::from_ints(&[1, 2, 3], 5, CAP).unwrap();
        let mu = minimal_polynomial(&a, &x).unwrap();
        assert!(agree(&mu.coeffs, &ints(&[-6, 1], 5)));
    }

    #[test]
    fn nilpotent_shift() {
        let a = PMatrix::from_ints(&[vec![0, 1], vec![0, 0]], 2, CAP).unwrap();
        let mu = minimal_polynomial(&a, &PVector::basis(2, 2, 1, CAP)).unwrap();
        assert_eq!(mu.degree(), 2);
        assert!(mu.coeffs[0].is_exact_zero() && mu.coeffs[1].is_exact_zero());
    }

    #[test]
    fn companion_of_t2_minus_p() {
        let a = PMatrix::from_ints(&[vec![0, 1], vec![2, 0]], 2, CAP).unwrap();
        let mu = minimal_polynomial(&a, &PVector::basis(2, 2, 0, CAP)).unwrap();
        assert!(agree(&mu.coeffs, &ints(&[-2, 0, 1], 2)));
    }

    #[test]
    fn zero_vector_rejected() {
        let a = PMatrix::identity(3, 2, CAP);
        assert!(minimal_polynomial(&a, &PVector::zeros(3, 2)).is_err());
    }
}
