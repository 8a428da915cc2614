use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::carrier::{Carrier, Norm};
use crate::error::{Error, Result};
use crate::padic::{ExtRational, PAdicScalar};

/// A multi-index `α = (α_1, …, α_n)`.
pub type MultiIndex = Vec<u32>;

pub fn total_degree(alpha: &[u32]) -> usize {
    alpha.iter().map(|&a| a as usize).sum()
}

/// A truncated element `Σ f_α x^α` of `𝒜_ρ`, `ρ = p^s`, with norm
/// `‖f‖_ρ = sup |f_α| ρ^{|α|}`.
///
/// Either an exact polynomial of degree at most `degree`, or a truncation
/// whose coefficients are known exactly up to total degree `valid_degree`
/// and are not stored above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiSeries {
    prime: u32,
    nvars: usize,
    rho_exp: Ratio<i64>,
    degree: usize,
    valid_degree: usize,
    polynomial: bool,
    /// Exact zeros are never stored.
    coeffs: BTreeMap<MultiIndex, PAdicScalar>,
}

impl MultiSeries {
    /// The polynomial `Σ coeffs[α] x^α`, with room up to total degree
    /// `degree`.
    pub fn polynomial(
        prime: u32,
        nvars: usize,
        rho_exp: Ratio<i64>,
        degree: usize,
        coeffs: impl IntoIterator<Item = (MultiIndex, PAdicScalar)>,
    ) -> Result<Self> {
        let mut out = MultiSeries {
            prime,
            nvars,
            rho_exp,
            degree,
            valid_degree: degree,
            polynomial: true,
            coeffs: BTreeMap::new(),
        };
        for (alpha, c) in coeffs {
            if alpha.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: alpha.len() });
            }
            if c.prime() != prime {
                return Err(Error::PrimeMismatch(prime, c.prime()));
            }
            if total_degree(&alpha) > degree {
                return Err(Error::InvalidProblem(format!("monomial {alpha:?} exceeds the degree bound {degree}")));
            }
            out.accumulate(alpha, c)?;
        }
        Ok(out)
    }

    /// A truncation known exactly up to `valid_degree`; higher coefficients
    /// are dropped.
    pub fn truncated(
        prime: u32,
        nvars: usize,
        rho_exp: Ratio<i64>,
        valid_degree: usize,
        coeffs: impl IntoIterator<Item = (MultiIndex, PAdicScalar)>,
    ) -> Result<Self> {
        let coeffs: Vec<_> = coeffs.into_iter().filter(|(a, _)| total_degree(a) <= valid_degree).collect();
        let mut out = Self::polynomial(prime, nvars, rho_exp, valid_degree, coeffs)?;
        out.polynomial = false;
        Ok(out)
    }

    /// `Σ num/den · x^α` from exact rationals.
    pub fn from_rationals(
        prime: u32,
        nvars: usize,
        rho_exp: Ratio<i64>,
        degree: usize,
        terms: &[(MultiIndex, i64, i64)],
        cap: u32,
    ) -> Result<Self> {
        let coeffs = terms
            .iter()
            .map(|(a, n, d)| Ok((a.clone(), PAdicScalar::from_rational(*n, *d, prime, cap)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::polynomial(prime, nvars, rho_exp, degree, coeffs)
    }

    pub fn constant(c: PAdicScalar, nvars: usize, rho_exp: Ratio<i64>, degree: usize) -> Self {
        let p = c.prime();
        Self::polynomial(p, nvars, rho_exp, degree, [(vec![0; nvars], c)]).expect("constant term")
    }

    /// The coordinate function `x_j`.
    pub fn variable(prime: u32, nvars: usize, j: usize, rho_exp: Ratio<i64>, degree: usize, cap: u32) -> Self {
        let mut alpha = vec![0; nvars];
        alpha[j] = 1;
        Self::polynomial(prime, nvars, rho_exp, degree.max(1), [(alpha, PAdicScalar::one(prime, cap))])
            .expect("degree one monomial")
    }

    fn accumulate(&mut self, alpha: MultiIndex, c: PAdicScalar) -> Result<()> {
        if c.is_exact_zero() {
            return Ok(());
        }
        let sum = match self.coeffs.remove(&alpha) {
            Some(prev) => prev.try_add(&c)?,
            None => c,
        };
        if !sum.is_exact_zero() {
            self.coeffs.insert(alpha, sum);
        }
        Ok(())
    }

    fn empty_like(&self, degree: usize, valid_degree: usize, polynomial: bool) -> Self {
        MultiSeries {
            prime: self.prime,
            nvars: self.nvars,
            rho_exp: self.rho_exp,
            degree,
            valid_degree,
            polynomial,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rho_exp(&self) -> Ratio<i64> {
        self.rho_exp
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn valid_degree(&self) -> usize {
        self.valid_degree
    }

    pub fn is_polynomial(&self) -> bool {
        self.polynomial
    }

    /// Degrees up to which the coefficients are those of the represented
    /// function (unbounded for a polynomial).
    pub fn exact_upto(&self) -> usize {
        if self.polynomial {
            usize::MAX
        } else {
            self.valid_degree
        }
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, PAdicScalar> {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &[u32]) -> PAdicScalar {
        self.coeffs.get(alpha).cloned().unwrap_or_else(|| PAdicScalar::exact_zero(self.prime))
    }

    /// Same function with room up to total degree `degree`. Shrinking a
    /// polynomial below its degree turns it into a truncation.
    pub fn with_degree(&self, degree: usize) -> Self {
        let fits = self.coeffs.keys().all(|a| total_degree(a) <= degree);
        let (valid, polynomial) =
            if self.polynomial && fits { (degree, true) } else { (self.exact_upto().min(degree), false) };
        let mut out = self.empty_like(degree, valid, polynomial);
        out.coeffs =
            self.coeffs.iter().filter(|(a, _)| total_degree(a) <= valid).map(|(a, c)| (a.clone(), c.clone())).collect();
        out
    }

    /// The part of total degree at most `d`, as a polynomial.
    pub fn restrict(&self, d: usize) -> Self {
        let d = d.min(self.exact_upto());
        let mut out = self.empty_like(d, d, true);
        out.coeffs =
            self.coeffs.iter().filter(|(a, _)| total_degree(a) <= d).map(|(a, c)| (a.clone(), c.clone())).collect();
        out
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, got: other.nvars });
        }
        if self.rho_exp != other.rho_exp {
            return Err(Error::InvalidProblem(format!(
                "radius exponents differ: {} and {}",
                self.rho_exp, other.rho_exp
            )));
        }
        Ok(())
    }

    fn combine(&self, rhs: &Self, neg: bool) -> Result<Self> {
        self.check_compatible(rhs)?;
        let degree = self.degree.max(rhs.degree);
        let polynomial = self.polynomial && rhs.polynomial;
        let valid = if polynomial { degree } else { self.exact_upto().min(rhs.exact_upto()).min(degree) };
        let mut out = self.empty_like(degree, valid, polynomial);
        for (a, c) in &self.coeffs {
            if total_degree(a) <= valid {
                out.accumulate(a.clone(), c.clone())?;
            }
        }
        for (a, c) in &rhs.coeffs {
            if total_degree(a) <= valid {
                out.accumulate(a.clone(), if neg { -c.clone() } else { c.clone() })?;
            }
        }
        Ok(out)
    }

    fn map_coeffs(&self, f: impl Fn(&PAdicScalar) -> Result<PAdicScalar>) -> Result<Self> {
        let mut out = self.empty_like(self.degree, self.valid_degree, self.polynomial);
        for (a, c) in &self.coeffs {
            out.accumulate(a.clone(), f(c)?)?;
        }
        Ok(out)
    }
}

/// `‖f‖_ρ` exponent: `max_α (−v(f_α) + s·|α|)` over the stored
/// coefficients. Certified only for an exact polynomial with certified
/// coefficients; for a truncation it is the norm of the retained part.
pub fn a_rho_norm(f: &MultiSeries) -> Norm {
    let s = ExtRational::Finite(f.rho_exp);
    let n = Norm::sup(f.coeffs.iter().map(|(a, c)| {
        let norm = Norm::of_scalar(c);
        Norm { exponent: norm.exponent + s.scale_int(total_degree(a) as i64), certified: norm.certified }
    }));
    Norm { exponent: n.exponent, certified: n.certified && f.polynomial }
}

/// `∂f/∂x_j`, with coefficient `(α_j + 1) f_{α+e_j}` at `α`.
pub fn partial_derivative(f: &MultiSeries, j: usize) -> Result<MultiSeries> {
    if j >= f.nvars {
        return Err(Error::DimensionMismatch { expected: f.nvars, got: j + 1 });
    }
    let valid = if f.polynomial {
        f.valid_degree
    } else {
        f.valid_degree.checked_sub(1).ok_or(Error::InsufficientDegree { needed: 1, have: 0 })?
    };
    let mut out = f.empty_like(f.degree, valid, f.polynomial);
    for (a, c) in &f.coeffs {
        if a[j] == 0 {
            continue;
        }
        let mut b = a.clone();
        b[j] -= 1;
        if total_degree(&b) <= valid {
            out.accumulate(b, c.mul_int(&BigInt::from(a[j])))?;
        }
    }
    Ok(out)
}

/// Truncated Cauchy product `c_α = Σ_{i≤α} f_i g_{α−i}`, kept up to the
/// larger of the two degree bounds.
pub fn multiply(f: &MultiSeries, g: &MultiSeries) -> Result<MultiSeries> {
    f.check_compatible(g)?;
    let degree = f.degree.max(g.degree);
    let valid = f.exact_upto().min(g.exact_upto()).min(degree);
    let mut overflow = false;
    let mut out = f.empty_like(degree, valid, false);
    for (a, x) in &f.coeffs {
        for (b, y) in &g.coeffs {
            let c: MultiIndex = a.iter().zip(b).map(|(i, j)| i + j).collect();
            if total_degree(&c) > valid {
                overflow = true;
                continue;
            }
            out.accumulate(c, x.try_mul(y)?)?;
        }
    }
    out.polynomial = f.polynomial && g.polynomial && !overflow;
    Ok(out)
}

impl Carrier for MultiSeries {
    fn prime(&self) -> u32 {
        self.prime
    }

    fn zero_like(&self) -> Self {
        self.empty_like(self.degree, self.degree, true)
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, false)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, true)
    }

    fn scale(&self, c: &PAdicScalar) -> Result<Self> {
        if c.is_exact_zero() {
            return Ok(self.empty_like(self.degree, self.valid_degree, self.polynomial));
        }
        self.map_coeffs(|x| x.try_mul(c))
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        self.map_coeffs(|x| Ok(x.mul_int(k))).expect("integer scaling does not fail")
    }

    fn div_int(&self, k: &BigInt) -> Result<Self> {
        self.map_coeffs(|x| x.div_int(k))
    }

    fn norm(&self) -> Norm {
        a_rho_norm(self)
    }

    /// Only an exact polynomial can be known to be zero.
    fn is_exact_zero(&self) -> bool {
        self.polynomial && self.coeffs.is_empty()
    }

    fn vanishes(&self) -> bool {
        self.coeffs.values().all(PAdicScalar::vanishes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u32 = 32;

    fn poly(p: u32, nvars: usize, s: i64, d: usize, terms: &[(&[u32], i64)]) -> MultiSeries {
        let t: Vec<_> = terms.iter().map(|(a, c)| (a.to_vec(), *c, 1)).collect();
        MultiSeries::from_rationals(p, nvars, Ratio::from_integer(s), d, &t, CAP).unwrap()
    }

    #[test]
    fn derivative_examples() {
        let x = MultiSeries::variable(3, 2, 0, Ratio::from_integer(0), 4, CAP);
        let one = poly(3, 2, 0, 4, &[(&[0, 0], 1)]);
        assert_eq!(partial_derivative(&x, 0).unwrap(), one);
        let f = poly(3, 2, 0, 4, &[(&[2, 1], 1)]);
        assert_eq!(partial_derivative(&f, 0).unwrap(), poly(3, 2, 0, 4, &[(&[1, 1], 2)]));
        assert!(partial_derivative(&f, 2).is_err());
    }

    #[test]
    fn derivative_norm_is_one_over_rho() {
        for s in [-2, 0, 1, 3] {
            let x = MultiSeries::variable(5, 3, 1, Ratio::from_integer(s), 3, CAP);
            let d = partial_derivative(&x, 1).unwrap();
            assert_eq!(a_rho_norm(&d).exponent - a_rho_norm(&x).exponent, ExtRational::int(-s));
        }
    }

    #[test]
    fn products() {
        let p = 7;
        let g = poly(p, 2, 1, 6, &[(&[0, 0], 3), (&[1, 2], 14)]);
        let one = poly(p, 2, 1, 6, &[(&[0, 0], 1)]);
        let fg = multiply(&one, &g).unwrap();
        assert_eq!(fg, g);
        assert_eq!(a_rho_norm(&fg), a_rho_norm(&g));
        let x1 = poly(p, 2, 1, 6, &[(&[1, 0], 1)]);
        let x2 = poly(p, 2, 1, 6, &[(&[0, 1], 1)]);
        assert_eq!(multiply(&x1, &x2).unwrap(), poly(p, 2, 1, 6, &[(&[1, 1], 1)]));
        let h = poly(p, 1, 0, 4, &[(&[0], 1), (&[1], 7)]);
        assert_eq!(multiply(&h, &h).unwrap(), poly(p, 1, 0, 4, &[(&[0], 1), (&[1], 14), (&[2], 49)]));
    }

    #[test]
    fn truncated_product_loses_polynomial_status() {
        let x = poly(2, 1, 0, 2, &[(&[2], 1)]);
        let sq = multiply(&x, &x).unwrap();
        assert!(!sq.is_polynomial());
        assert_eq!(sq.valid_degree(), 2);
        assert!(sq.coeffs().is_empty());
        assert!(!sq.is_exact_zero());
    }

    #[test]
    fn norm_examples() {
        assert_eq!(a_rho_norm(&poly(3, 1, 5, 2, &[(&[0], 1)])).exponent, ExtRational::ZERO);
        let x = MultiSeries::variable(3, 2, 0, Ratio::from_integer(1), 2, CAP);
        assert_eq!(a_rho_norm(&x).exponent, ExtRational::int(1));
        let f = poly(3, 1, 1, 2, &[(&[2], 3)]);
        assert_eq!(a_rho_norm(&f), Norm::exact(ExtRational::int(1)));
    }

    #[test]
    fn truncation_bookkeeping() {
        let f = MultiSeries::truncated(
            2,
            1,
            Ratio::from_integer(0),
            3,
            (0..6).map(|i| (vec![i], PAdicScalar::one(2, CAP))),
        )
        .unwrap();
        assert_eq!(f.coeffs().len(), 4);
        let d = partial_derivative(&f, 0).unwrap();
        assert_eq!(d.valid_degree(), 2);
        assert!(!a_rho_norm(&d).certified);
        let sum = d.try_add(&poly(2, 1, 0, 5, &[(&[5], 1)])).unwrap();
        assert_eq!(sum.valid_degree(), 2);
        assert!(sum.coeffs().keys().all(|a| total_degree(a) <= 2));
    }

    #[test]
    fn with_degree_and_restrict() {
        let f = poly(5, 1, 0, 3, &[(&[0], 1), (&[3], 2)]);
        let g = f.with_degree(10);
        assert!(g.is_polynomial() && g.degree() == 10);
        let h = f.with_degree(2);
        assert!(!h.is_polynomial());
        assert_eq!(h.valid_degree(), 2);
        assert_eq!(f.restrict(1), poly(5, 1, 0, 1, &[(&[0], 1)]));
    }
}
