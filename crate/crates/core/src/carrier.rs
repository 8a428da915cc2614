//! The Banach-space interface shared by finite vectors and function-space
//! elements, and the bounded operators acting on them.

use std::fmt::Debug;

use num_bigint::BigInt;

use crate::error::Result;
use crate::linalg::TypeCertificate;
use crate::padic::{ExtRational, PAdicScalar};

/// A norm value `p^exponent`. `exponent` is always a certified upper bound;
/// `certified` says it is also attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Norm {
    pub exponent: ExtRational,
    pub certified: bool,
}

impl Norm {
    pub fn exact(exponent: ExtRational) -> Self {
        Norm { exponent, certified: true }
    }

    /// Ultrametric sup of a family of entry bounds.
    ///
    /// `certified` entries are exact, the others are upper bounds. The sup is
    /// certified when the largest exact entry dominates every bound.
    pub fn sup(entries: impl IntoIterator<Item = Norm>) -> Norm {
        let mut exact = ExtRational::NegInf;
        let mut loose = ExtRational::NegInf;
        let mut any_loose = false;
        for n in entries {
            if n.certified {
                exact = exact.max(n.exponent);
            } else {
                any_loose = true;
                loose = loose.max(n.exponent);
            }
        }
        Norm { exponent: exact.max(loose), certified: !any_loose || (exact.is_finite() && exact >= loose) }
    }

    pub(crate) fn of_scalar(x: &PAdicScalar) -> Norm {
        match x.norm_exponent() {
            Ok(e) => Norm::exact(e),
            Err(_) => Norm { exponent: -x.valuation_lower_bound(), certified: false },
        }
    }
}

/// An element of the coefficient space of a power series.
pub trait Carrier: Clone + Debug + PartialEq + Send + Sync {
    fn prime(&self) -> u32;
    /// The zero element with the same shape.
    fn zero_like(&self) -> Self;
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_sub(&self, rhs: &Self) -> Result<Self>;
    fn scale(&self, c: &PAdicScalar) -> Result<Self>;
    /// Multiplication by an exact integer, without precision loss.
    fn mul_int(&self, k: &BigInt) -> Self;
    fn div_int(&self, k: &BigInt) -> Result<Self>;
    fn norm(&self) -> Norm;
    fn is_exact_zero(&self) -> bool;
    /// Every entry is zero at working precision.
    fn vanishes(&self) -> bool;
}

/// Growth certificate for an operator orbit: `v(A^n x) ≥ gamma − n·sigma_exp`
/// for every `n ≥ 0`, where `v` is minus the norm exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitBound {
    pub sigma_exp: ExtRational,
    pub gamma: ExtRational,
    /// `A^n x = 0` for all `n` at or beyond this index, when known.
    pub vanishes_from: Option<usize>,
    pub certificate: TypeCertificate,
}

/// A bounded linear operator on a carrier space.
pub trait LinearOperator: Sync {
    type Vector: Carrier;

    fn apply(&self, x: &Self::Vector) -> Result<Self::Vector>;

    fn orbit_bound(&self, x: &Self::Vector) -> Result<OrbitBound>;
}

/// `Q_p` itself, with the absolute value as norm.
impl Carrier for PAdicScalar {
    fn prime(&self) -> u32 {
        PAdicScalar::prime(self)
    }

    fn zero_like(&self) -> Self {
        PAdicScalar::exact_zero(self.prime())
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        PAdicScalar::try_add(self, rhs)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        PAdicScalar::try_sub(self, rhs)
    }

    fn scale(&self, c: &PAdicScalar) -> Result<Self> {
        self.try_mul(c)
    }

    fn mul_int(&self, k: &BigInt) -> Self {
        PAdicScalar::mul_int(self, k)
    }

    fn div_int(&self, k: &BigInt) -> Result<Self> {
        PAdicScalar::div_int(self, k)
    }

    fn norm(&self) -> Norm {
        Norm::of_scalar(self)
    }

    fn is_exact_zero(&self) -> bool {
        PAdicScalar::is_exact_zero(self)
    }

    fn vanishes(&self) -> bool {
        PAdicScalar::vanishes(self)
    }
}
