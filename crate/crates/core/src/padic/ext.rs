//! Extended rationals: exact exponents on the log-p scale.
//!
//! Valuations, norm exponents and radius thresholds all live here. A norm
//! `‖x‖ = p^e` is stored as `e`; a disk radius `r = p^{-τ}` as `τ`.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational number or one of `±∞`, ordered `−∞ < finite < +∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtRational {
    NegInf,
    Finite(Ratio<i64>),
    PosInf,
}

impl ExtRational {
    pub const ZERO: ExtRational = ExtRational::Finite(Ratio::new_raw(0, 1));

    pub fn int(n: i64) -> Self {
        ExtRational::Finite(Ratio::from_integer(n))
    }

    /// `num/den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        ExtRational::Finite(Ratio::new(num, den))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn finite(&self) -> Option<Ratio<i64>> {
        match self {
            ExtRational::Finite(r) => Some(*r),
            _ => None,
        }
    }

    pub fn numer(&self) -> Option<i64> {
        self.finite().map(|r| *r.numer())
    }

    pub fn denom(&self) -> Option<i64> {
        self.finite().map(|r| *r.denom())
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        use ExtRational::*;
        match (self, rhs) {
            (PosInf, NegInf) | (NegInf, PosInf) => Err(Error::IndeterminateForm("(+inf) + (-inf)".into())),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }

    pub fn checked_sub(self, rhs: Self) -> Result<Self> {
        self.checked_add(-rhs)
    }

    /// Multiplication by a finite rational. `±∞ · 0` is indeterminate.
    pub fn checked_scale(self, by: Ratio<i64>) -> Result<Self> {
        use ExtRational::*;
        match self {
            Finite(a) => Ok(Finite(a * by)),
            inf if by.is_zero() => Err(Error::IndeterminateForm(format!("{inf} * 0"))),
            PosInf if by.is_positive() => Ok(PosInf),
            PosInf => Ok(NegInf),
            NegInf if by.is_positive() => Ok(NegInf),
            NegInf => Ok(PosInf),
        }
    }

    pub fn checked_scale_int(self, by: i64) -> Result<Self> {
        self.checked_scale(Ratio::from_integer(by))
    }

    /// Division by a nonzero finite rational.
    pub fn checked_div(self, by: Ratio<i64>) -> Result<Self> {
        if by.is_zero() {
            return Err(Error::IndeterminateForm("division by zero".into()));
        }
        self.checked_scale(by.recip())
    }

    pub fn scale(self, by: Ratio<i64>) -> Self {
        self.checked_scale(by).expect("indeterminate extended-rational product")
    }

    pub fn scale_int(self, by: i64) -> Self {
        self.scale(Ratio::from_integer(by))
    }

    pub fn div_int(self, by: i64) -> Self {
        self.checked_div(Ratio::from_integer(by)).expect("division of an extended rational by zero")
    }

    pub fn floor(&self) -> Option<i64> {
        self.finite().map(|r| r.floor().to_integer())
    }

    pub fn ceil(&self) -> Option<i64> {
        self.finite().map(|r| r.ceil().to_integer())
    }

    /// Display-only floating approximation of the exponent.
    pub fn to_f64(&self) -> f64 {
        match self {
            ExtRational::NegInf => f64::NEG_INFINITY,
            ExtRational::PosInf => f64::INFINITY,
            ExtRational::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
        }
    }

    /// `1/(p-1)`, the exponent that sits in every radius formula.
    pub fn inv_p_minus_one(p: u32) -> Self {
        ExtRational::new(1, p as i64 - 1)
    }
}

impl From<i64> for ExtRational {
    fn from(n: i64) -> Self {
        ExtRational::int(n)
    }
}

impl From<Ratio<i64>> for ExtRational {
    fn from(r: Ratio<i64>) -> Self {
        ExtRational::Finite(r)
    }
}

/// Panics on `(+∞) + (−∞)`; use [`ExtRational::checked_add`] when that can occur.
impl Add for ExtRational {
    type Output = ExtRational;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("indeterminate extended-rational sum")
    }
}

impl Sub for ExtRational {
    type Output = ExtRational;
    fn sub(self, rhs: Self) -> Self {
        self.checked_sub(rhs).expect("indeterminate extended-rational difference")
    }
}

impl Neg for ExtRational {
    type Output = ExtRational;
    fn neg(self) -> Self {
        match self {
            ExtRational::NegInf => ExtRational::PosInf,
            ExtRational::PosInf => ExtRational::NegInf,
            ExtRational::Finite(r) => ExtRational::Finite(-r),
        }
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => f.write_str("-inf"),
            ExtRational::PosInf => f.write_str("+inf"),
            ExtRational::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtRational::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "+inf" | "inf" | "+∞" | "∞" => return Ok(ExtRational::PosInf),
            "-inf" | "-∞" => return Ok(ExtRational::NegInf),
            _ => {}
        }
        let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: i64 = num.parse().map_err(|_| bad())?;
        let den: i64 = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(ExtRational::new(num, den))
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
