use num_bigint::BigInt;

use crate::carrier::{Carrier, Norm};
use crate::error::{Error, Result};
use crate::padic::{ExtRational, PAdicScalar};

/// A vector in `Q_p^d` with the sup norm.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PVector {
    prime: u32,
    entries: Vec<PAdicScalar>,
}

impl PVector {
    pub fn new(entries: Vec<PAdicScalar>) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(Error::InvalidProblem("vectors need at least one entry".into()));
        };
        let prime = first.prime();
        if let Some(bad) = entries.iter().find(|e| e.prime() != prime) {
            return Err(Error::PrimeMismatch(prime, bad.prime()));
        }
        Ok(PVector { prime, entries })
    }

    pub fn zeros(prime: u32, dim: usize) -> Self {
        PVector { prime, entries: vec![PAdicScalar::exact_zero(prime); dim] }
    }

    /// The `j`-th standard basis vector.
    pub fn basis(prime: u32, dim: usize, j: usize, cap: u32) -> Self {
        let mut v = Self::zeros(prime, dim);
        v.entries[j] = PAdicScalar::one(prime, cap);
        v
    }

    pub fn from_rationals(values: &[(i64, i64)], prime: u32, cap: u32) -> Result<Self> {
        let entries =
            values.iter().map(|&(a, b)| PAdicScalar::from_rational(a, b, prime, cap)).collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn from_ints(values: &[i64], prime: u32, cap: u32) -> Result<Self> {
        let pairs: Vec<_> = values.iter().map(|&a| (a, 1)).collect();
        Self::from_rationals(&pairs, prime, cap)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[PAdicScalar] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &PAdicScalar {
        &self.entries[i]
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        Ok(())
    }

    /// Minimum entry valuation, as a lower bound that is certified when the
    /// norm is.
    pub fn valuation(&self) -> ExtRational {
        -self.norm().exponent
    }
}

/// Exponent `e` with `‖x‖ = p^e` under the sup norm; `−∞` for the zero vector.
pub fn sup_norm(x: &PVector) -> Result<ExtRational> {
    let n = x.norm();
    if n.certified {
        Ok(n.exponent)
    } else {
        Err(Error::PrecisionExhausted(format!("sup norm not certified (bound p^{})", n.exponent)))
    }
}

impl Carrier for PVector {
    fn prime(&self) -> u32 {
        self.prime
    }

    fn zero_like(&self) -> Self {
        PVector::zeros(self.prime, self.dim())
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.try_add(b)).collect::<Result<_>>()?;
        Ok(PVector { prime: self.prime, entries })
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.try_sub(b)).collect::<Result<_>>()?;
        Ok(PVector { prime: self.prime, entries })
    }

    fn scale(&self, c: &PAdicScalar) -> Result<Self> {
        let entries = self.entries.iter().map(|a| a.try_mul(c)).collect::<Result<_>>()?;
        Ok(PVector { prime: self.prime, entries })
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        PVector { prime: self.prime, entries: self.entries.iter().map(|a| a.mul_int(k)).collect() }
    }

    fn div_int(&self, k: &BigInt) -> Result<Self> {
        let entries = self.entries.iter().map(|a| a.div_int(k)).collect::<Result<_>>()?;
        Ok(PVector { prime: self.prime, entries })
    }

    fn norm(&self) -> Norm {
        Norm::sup(self.entries.iter().map(Norm::of_scalar))
    }

    fn is_exact_zero(&self) -> bool {
        self.entries.iter().all(PAdicScalar::is_exact_zero)
    }

    fn vanishes(&self) -> bool {
        self.entries.iter().all(PAdicScalar::vanishes)
    }
}

/// A square matrix over `Q_p`, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PMatrix {
    prime: u32,
    rows: Vec<Vec<PAdicScalar>>,
}

impl PMatrix {
    pub fn new(rows: Vec<Vec<PAdicScalar>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::InvalidProblem("matrices need at least one row".into()));
        }
        let prime =
            rows[0].first().map(PAdicScalar::prime).ok_or_else(|| Error::InvalidProblem("empty matrix row".into()))?;
        for row in &rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch { expected: d, got: row.len() });
            }
            if let Some(bad) = row.iter().find(|e| e.prime() != prime) {
                return Err(Error::PrimeMismatch(prime, bad.prime()));
            }
        }
        Ok(PMatrix { prime, rows })
    }

    pub fn from_rationals(rows: &[Vec<(i64, i64)>], prime: u32, cap: u32) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&(a, b)| PAdicScalar::from_rational(a, b, prime, cap)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn from_ints(rows: &[Vec<i64>], prime: u32, cap: u32) -> Result<Self> {
        let rows: Vec<Vec<(i64, i64)>> = rows.iter().map(|r| r.iter().map(|&a| (a, 1)).collect()).collect();
        Self::from_rationals(&rows, prime, cap)
    }

    pub fn identity(prime: u32, dim: usize, cap: u32) -> Self {
        let rows = (0..dim).map(|i| PVector::basis(prime, dim, i, cap).entries).collect();
        PMatrix { prime, rows }
    }

    pub fn zeros(prime: u32, dim: usize) -> Self {
        PMatrix { prime, rows: vec![vec![PAdicScalar::exact_zero(prime); dim]; dim] }
    }

    /// `diag(values)`.
    pub fn diagonal(values: Vec<PAdicScalar>) -> Result<Self> {
        let d = values.len();
        let prime = values.first().map(PAdicScalar::prime).unwrap_or(2);
        let mut m = PMatrix::zeros(prime, d);
        for (i, v) in values.into_iter().enumerate() {
            m.rows[i][i] = v;
        }
        Self::new(m.rows)
    }

    /// Companion matrix of the monic polynomial `t^d + c_{d-1} t^{d-1} + … + c_0`
    /// given `coeffs = [c_0, …, c_{d-1}]`: ones on the subdiagonal, `-c_i` in
    /// the last column, so `A e_i = e_{i+1}`.
    pub fn companion(coeffs: &[PAdicScalar]) -> Result<Self> {
        let d = coeffs.len();
        let prime = coeffs
            .first()
            .map(PAdicScalar::prime)
            .ok_or_else(|| Error::InvalidProblem("companion of a constant".into()))?;
        let cap = coeffs.iter().filter_map(PAdicScalar::relative_precision).max().unwrap_or(64);
        let mut m = PMatrix::zeros(prime, d);
        for i in 1..d {
            m.rows[i][i - 1] = PAdicScalar::one(prime, cap as u32);
        }
        for (i, c) in coeffs.iter().enumerate() {
            m.rows[i][d - 1] = -c.clone();
        }
        Self::new(m.rows)
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<PAdicScalar>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &PAdicScalar {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> PVector {
        PVector { prime: self.prime, entries: self.rows.iter().map(|r| r[j].clone()).collect() }
    }

    pub fn mul(&self, other: &PMatrix) -> Result<PMatrix> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        let cols: Vec<PVector> = (0..self.dim()).map(|j| mat_apply(self, &other.column(j))).collect::<Result<_>>()?;
        let rows = (0..self.dim()).map(|i| cols.iter().map(|c| c.entries[i].clone()).collect()).collect();
        Ok(PMatrix { prime: self.prime, rows })
    }
}

/// `−min` entry valuation; for the sup norm this is the exact operator norm,
/// attained on a basis vector.
pub fn operator_norm(a: &PMatrix) -> Result<ExtRational> {
    let n = Norm::sup(a.rows.iter().flatten().map(Norm::of_scalar));
    if n.certified {
        Ok(n.exponent)
    } else {
        Err(Error::PrecisionExhausted("operator norm not certified".into()))
    }
}

pub fn mat_apply(a: &PMatrix, x: &PVector) -> Result<PVector> {
    if a.prime != x.prime {
        return Err(Error::PrimeMismatch(a.prime, x.prime));
    }
    if a.dim() != x.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: x.dim() });
    }
    let entries = a
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .zip(&x.entries)
                .try_fold(PAdicScalar::exact_zero(a.prime), |acc, (m, v)| acc.try_add(&m.try_mul(v)?))
        })
        .collect::<Result<_>>()?;
    Ok(PVector { prime: a.prime, entries })
}
