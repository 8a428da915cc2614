//! Truncated power series `Σ c_n z^n` with coefficients in a Banach space.
//!
//! A series stores `c_0..c_N` and, optionally, a linear tail certificate
//! `v(c_n) ≥ gamma + slope·n` for `n > N` (`v` is minus the norm exponent).
//! With a certificate the series converges on `v(z) > −slope`, so its radius
//! threshold is `τ = −slope` and `r = p^{−τ}`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, Norm};
use crate::error::{Error, Result};
use crate::padic::{ExtRational, PAdicScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailBound {
    pub gamma: ExtRational,
    pub slope: ExtRational,
}

impl TailBound {
    /// Every coefficient beyond the truncation is zero.
    pub const ZERO: TailBound = TailBound { gamma: ExtRational::PosInf, slope: ExtRational::PosInf };

    pub fn is_zero(&self) -> bool {
        self.gamma == ExtRational::PosInf
    }

    /// The certified lower bound `gamma + slope·n` on `v(c_n)`.
    pub fn valuation_at(&self, n: usize) -> ExtRational {
        if self.is_zero() {
            return ExtRational::PosInf;
        }
        if n == 0 {
            return self.gamma;
        }
        self.slope.checked_scale_int(n as i64).and_then(|s| self.gamma.checked_add(s)).unwrap_or(ExtRational::NegInf)
    }

    pub fn threshold(&self) -> ExtRational {
        -self.slope
    }

    /// A bound valid for both operands of a sum.
    pub fn combine(&self, other: &TailBound) -> TailBound {
        TailBound { gamma: self.gamma.min(other.gamma), slope: self.slope.min(other.slope) }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BSeries<C: Carrier> {
    coeffs: Vec<C>,
    tail: Option<TailBound>,
}

impl<C: Carrier> BSeries<C> {
    /// A finite tail certificate must also hold for the stored coefficients;
    /// a certified violation is rejected.
    pub fn new(coeffs: Vec<C>, tail: Option<TailBound>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::InvalidProblem("a series needs at least c_0".into()));
        };
        let p = first.prime();
        if let Some(bad) = coeffs.iter().find(|c| c.prime() != p) {
            return Err(Error::PrimeMismatch(p, bad.prime()));
        }
        if let Some(t) = tail.filter(|t| !t.is_zero()) {
            for (n, c) in coeffs.iter().enumerate() {
                let norm = c.norm();
                if norm.certified && norm.exponent > -t.valuation_at(n) {
                    return Err(Error::InvalidProblem(format!(
                        "tail certificate violated by c_{n}: norm exponent {} exceeds {}",
                        norm.exponent,
                        -t.valuation_at(n)
                    )));
                }
            }
        }
        Ok(BSeries { coeffs, tail })
    }

    /// A polynomial: the zero tail.
    pub fn polynomial(coeffs: Vec<C>) -> Result<Self> {
        Self::new(coeffs, Some(TailBound::ZERO))
    }

    pub fn prime(&self) -> u32 {
        self.coeffs[0].prime()
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&C> {
        self.coeffs.get(n)
    }

    pub fn tail(&self) -> Option<TailBound> {
        self.tail
    }

    /// Drops the coefficients above `n`. A zero tail survives only when every
    /// dropped coefficient is an exact zero.
    pub fn truncate(&self, n: usize) -> Self {
        if n >= self.truncation() {
            return self.clone();
        }
        let dropped_zero = self.coeffs[n + 1..].iter().all(Carrier::is_exact_zero);
        let tail = match self.tail {
            Some(t) if t.is_zero() && !dropped_zero => None,
            t => t,
        };
        BSeries { coeffs: self.coeffs[..=n].to_vec(), tail }
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&C, &C) -> Result<C>) -> Result<Self> {
        if self.prime() != rhs.prime() {
            return Err(Error::PrimeMismatch(self.prime(), rhs.prime()));
        }
        let poly = |y: &Self| y.tail.is_some_and(|t| t.is_zero());
        let n = match (poly(self), poly(rhs)) {
            (true, true) => self.truncation().max(rhs.truncation()),
            (true, false) => rhs.truncation(),
            (false, true) => self.truncation(),
            (false, false) => self.truncation().min(rhs.truncation()),
        };
        // a polynomial is padded with exact zeros
        let zero = self.coeffs[0].zero_like();
        let at = |y: &'_ Self, i: usize| y.coeffs.get(i).cloned().unwrap_or_else(|| zero.clone());
        let coeffs = (0..=n).map(|i| f(&at(self, i), &at(rhs, i))).collect::<Result<_>>()?;
        let tail = match (self.tail, rhs.tail) {
            (Some(a), Some(b)) => Some(a.combine(&b)),
            _ => None,
        };
        Ok(BSeries { coeffs, tail })
    }

    /// Coefficientwise sum, truncated at the shorter non-polynomial operand.
    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.try_add(b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a.try_sub(b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumOrder {
    Horner,
    Direct,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesValue<C> {
    pub value: C,
    /// Lower bound on the valuation of the omitted tail `Σ_{n>N} c_n z^n`;
    /// `+∞` when nothing is omitted.
    pub error_exponent: ExtRational,
    /// No tail certificate: `value` is the polynomial truncation only.
    pub truncation_only: bool,
}

pub fn series_eval<C: Carrier>(y: &BSeries<C>, z: &PAdicScalar) -> Result<SeriesValue<C>> {
    series_eval_with(y, z, SumOrder::Horner)
}

pub fn series_eval_with<C: Carrier>(y: &BSeries<C>, z: &PAdicScalar, order: SumOrder) -> Result<SeriesValue<C>> {
    if z.prime() != y.prime() {
        return Err(Error::PrimeMismatch(y.prime(), z.prime()));
    }
    let vz = z.valuation_lower_bound();
    let n = y.truncation();
    let (error_exponent, truncation_only) = match y.tail {
        None => (ExtRational::PosInf, true),
        Some(t) if t.is_zero() => (ExtRational::PosInf, false),
        Some(t) => {
            if vz <= t.threshold() {
                return Err(Error::DivergentPoint { valuation: vz.to_string(), threshold: t.threshold().to_string() });
            }
            let rate = t.slope + vz;
            (t.gamma + rate.scale_int(n as i64 + 1), false)
        }
    };
    let value = match order {
        SumOrder::Horner => {
            let mut acc = y.coeffs[n].clone();
            for c in y.coeffs[..n].iter().rev() {
                acc = acc.scale(z)?.try_add(c)?;
            }
            acc
        }
        SumOrder::Direct => {
            let mut acc = y.coeffs[0].clone();
            let mut zn = z.clone();
            for c in &y.coeffs[1..] {
                acc = acc.try_add(&c.scale(&zn)?)?;
                zn = zn.try_mul(z)?;
            }
            acc
        }
    };
    Ok(SeriesValue { value, error_exponent, truncation_only })
}

/// `y^{(i)} = Σ (n+1)…(n+i) c_{n+i} z^n`. The integer factors have
/// nonnegative valuation, so the tail keeps its slope.
pub fn series_derivative<C: Carrier>(y: &BSeries<C>, i: usize) -> Result<BSeries<C>> {
    if i > y.truncation() {
        return Err(Error::InsufficientDegree { needed: i as u32, have: y.truncation() as u32 });
    }
    let coeffs = (0..=y.truncation() - i)
        .map(|n| {
            let f: BigInt = ((n + 1)..=(n + i)).map(BigInt::from).product();
            y.coeffs[n + i].mul_int(&f)
        })
        .collect();
    let tail = y.tail.map(|t| if t.is_zero() { t } else { TailBound { gamma: t.valuation_at(i), slope: t.slope } });
    Ok(BSeries { coeffs, tail })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RadiusBound {
    /// `r ≥ p^{−tau}` when certified.
    pub tau: ExtRational,
    pub certified: bool,
}

/// The certified threshold from the tail, or else the finite-data estimate
/// `max_{1≤n≤N} log_p ‖c_n‖ / n` of the limsup.
pub fn radius_lower_bound<C: Carrier>(y: &BSeries<C>) -> RadiusBound {
    if let Some(t) = y.tail {
        return RadiusBound { tau: t.threshold(), certified: true };
    }
    let mut tau = ExtRational::NegInf;
    for (n, c) in y.coeffs.iter().enumerate().skip(1) {
        let e = c.norm().exponent;
        if e.is_finite() {
            tau = tau.max(e.div_int(n as i64));
        }
    }
    RadiusBound { tau, certified: false }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArNorm {
    /// `max_{n≤N} log_p(‖c_n‖ r^n)`.
    pub exponent: ExtRational,
    /// An upper bound over all `n`, using the tail; `+∞` without one.
    pub upper: ExtRational,
    /// `exponent` is the exact sup over all `n`.
    pub certified: bool,
}

fn term_exponent(e: ExtRational, n: usize, tau: ExtRational) -> ExtRational {
    if e == ExtRational::NegInf || n == 0 {
        return e;
    }
    e - tau.scale_int(n as i64)
}

/// `‖y‖_r = sup_n ‖c_n‖ r^n` at `r = p^{−tau}`.
pub fn ar_norm<C: Carrier>(y: &BSeries<C>, tau: ExtRational) -> ArNorm {
    let n = y.truncation();
    let terms: Vec<Norm> = y
        .coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let norm = c.norm();
            Norm { exponent: term_exponent(norm.exponent, i, tau), certified: norm.certified }
        })
        .collect();
    let stored = Norm::sup(terms.iter().copied());
    let tail_term = match y.tail {
        None => ExtRational::PosInf,
        Some(t) if t.is_zero() => ExtRational::NegInf,
        // beyond the threshold the per-term bound decreases, so n = N+1 is the sup
        Some(t) if tau > t.threshold() => term_exponent(-t.valuation_at(n + 1), n + 1, tau),
        Some(_) => ExtRational::PosInf,
    };
    let all = Norm::sup(terms.into_iter().chain([Norm { exponent: tail_term, certified: false }]));
    ArNorm {
        exponent: if all.certified { all.exponent } else { stored.exponent },
        upper: all.exponent,
        certified: all.certified && tail_term != ExtRational::PosInf,
    }
}

/// Membership in `𝔄_r` as certified by the tail: `None` without a tail,
/// `Some(false)` when the certificate does not reach `r`.
pub fn in_ar_check<C: Carrier>(y: &BSeries<C>, tau: ExtRational) -> Option<bool> {
    let t = y.tail?;
    // at the threshold itself the linear bound keeps ‖c_n‖r^n ≤ p^{−gamma}
    // but does not force it to zero
    Some(t.is_zero() || t.threshold() < tau)
}
