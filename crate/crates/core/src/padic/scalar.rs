//! Elements of `Q_p` with ball semantics.
//!
//! A nonzero scalar is the ball `unit·p^val + O(p^prec)` with `unit` a
//! residue modulo `p^(prec - val)` that is coprime to `p`. Cancellation in
//! addition produces a zero ball `O(p^prec)`; asking such a value for its
//! valuation fails with [`Error::PrecisionExhausted`] instead of returning a
//! wrong answer.

use std::fmt;
use std::ops::Neg;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::padic::ext::ExtRational;

/// Default relative precision cap, in base-`p` digits.
pub const DEFAULT_PRECISION: u32 = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PAdicScalar {
    prime: u32,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    ExactZero,
    /// `O(p^prec)`: no digit below `prec` survived.
    ZeroBall {
        prec: i64,
    },
    Ball {
        val: i64,
        unit: BigUint,
        prec: i64,
    },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

pub(crate) fn p_pow(p: u32, k: u64) -> BigUint {
    BigUint::from(p).pow(k as u32)
}

/// Strips every factor `p` from `n`, returning the count.
fn strip_p(n: &mut BigUint, p: u32) -> i64 {
    let pb = BigUint::from(p);
    let mut count = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return count;
        }
        *n = q;
        count += 1;
    }
}

fn mod_inverse(a: &BigUint, modulus: &BigUint) -> BigUint {
    if modulus.is_one() {
        return BigUint::zero();
    }
    let a = BigInt::from(a.clone());
    let m = BigInt::from(modulus.clone());
    let g = a.extended_gcd(&m);
    debug_assert!(g.gcd.is_one(), "unit not invertible");
    g.x.mod_floor(&m).to_biguint().expect("nonnegative residue")
}

fn signed_mod(n: &BigInt, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    n.mod_floor(&m).to_biguint().expect("nonnegative residue")
}

impl PAdicScalar {
    pub fn exact_zero(prime: u32) -> Self {
        PAdicScalar { prime, repr: Repr::ExactZero }
    }

    /// The ball `O(p^prec)`.
    pub fn zero_ball(prime: u32, prec: i64) -> Self {
        PAdicScalar { prime, repr: Repr::ZeroBall { prec } }
    }

    /// Builds `unit·p^val + O(p^prec)` from its parts, validating the unit.
    pub fn from_parts(prime: u32, val: i64, unit: BigUint, prec: i64) -> Result<Self> {
        check_prime(prime)?;
        if prec <= val {
            return Err(Error::Parse(format!("absolute precision {prec} must exceed valuation {val}")));
        }
        let modulus = p_pow(prime, (prec - val) as u64);
        if unit.is_zero() || unit >= modulus || (&unit % prime).is_zero() {
            return Err(Error::Parse(format!("unit {unit} is not a p-adic unit below p^{}", prec - val)));
        }
        Ok(PAdicScalar { prime, repr: Repr::Ball { val, unit, prec } })
    }

    /// Embeds `num/den` with `cap` digits of relative precision.
    pub fn from_bigint_ratio(num: &BigInt, den: &BigInt, prime: u32, cap: u32) -> Result<Self> {
        check_prime(prime)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(PAdicScalar::exact_zero(prime));
        }
        let sign = if num.sign() == den.sign() { Sign::Plus } else { Sign::Minus };
        let mut n = num.magnitude().clone();
        let mut d = den.magnitude().clone();
        let val = strip_p(&mut n, prime) - strip_p(&mut d, prime);
        let modulus = p_pow(prime, cap as u64);
        let inv = mod_inverse(&(&d % &modulus), &modulus);
        let unit = signed_mod(&BigInt::from_biguint(sign, (n * inv) % &modulus), &modulus);
        Ok(PAdicScalar { prime, repr: Repr::Ball { val, unit, prec: val + cap as i64 } })
    }

    pub fn from_rational(num: i64, den: i64, prime: u32, cap: u32) -> Result<Self> {
        Self::from_bigint_ratio(&BigInt::from(num), &BigInt::from(den), prime, cap)
    }

    pub fn from_big_rational(q: &BigRational, prime: u32, cap: u32) -> Result<Self> {
        Self::from_bigint_ratio(q.numer(), q.denom(), prime, cap)
    }

    pub fn from_bigint(n: &BigInt, prime: u32, cap: u32) -> Result<Self> {
        Self::from_bigint_ratio(n, &BigInt::one(), prime, cap)
    }

    pub fn from_int(n: i64, prime: u32, cap: u32) -> Result<Self> {
        Self::from_rational(n, 1, prime, cap)
    }

    pub fn one(prime: u32, cap: u32) -> Self {
        Self::from_int(1, prime, cap).expect("one embeds for any prime")
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::ExactZero)
    }

    /// True for exact zero and for zero balls.
    pub fn vanishes(&self) -> bool {
        !matches!(self.repr, Repr::Ball { .. })
    }

    /// `+∞` for exact zero, the integer valuation for a certified ball.
    pub fn valuation(&self) -> Result<ExtRational> {
        match &self.repr {
            Repr::ExactZero => Ok(ExtRational::PosInf),
            Repr::ZeroBall { prec } => {
                Err(Error::PrecisionExhausted(format!("valuation of O({}^{prec}) is not certified", self.prime)))
            }
            Repr::Ball { val, .. } => Ok(ExtRational::int(*val)),
        }
    }

    /// A certified lower bound on the valuation of every point of the ball.
    pub fn valuation_lower_bound(&self) -> ExtRational {
        match &self.repr {
            Repr::ExactZero => ExtRational::PosInf,
            Repr::ZeroBall { prec } => ExtRational::int(*prec),
            Repr::Ball { val, .. } => ExtRational::int(*val),
        }
    }

    /// Integer valuation of a certified nonzero ball.
    pub fn int_valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Ball { val, .. } => Some(*val),
            _ => None,
        }
    }

    /// `e` with `|x|_p = p^e`.
    pub fn norm_exponent(&self) -> Result<ExtRational> {
        self.valuation().map(|v| -v)
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Ball { unit, .. } => Some(unit),
            _ => None,
        }
    }

    /// Absolute precision `M` (the value is known modulo `p^M`); `None` when exact.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::ExactZero => None,
            Repr::ZeroBall { prec } | Repr::Ball { prec, .. } => Some(*prec),
        }
    }

    pub fn relative_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Ball { val, prec, .. } => Some(prec - val),
            _ => None,
        }
    }

    /// Little-endian base-`p` digits of the unit, padded to the relative precision.
    pub fn unit_digits(&self) -> Option<Vec<u32>> {
        let Repr::Ball { val, unit, prec } = &self.repr else {
            return None;
        };
        let mut rest = unit.clone();
        let mut digits = Vec::with_capacity((prec - val) as usize);
        for _ in 0..(prec - val) {
            let (q, r) = rest.div_rem(&BigUint::from(self.prime));
            digits.push(r.to_u32().expect("digit below p"));
            rest = q;
        }
        Some(digits)
    }

    pub fn from_unit_digits(prime: u32, val: i64, digits: &[u32], prec: i64) -> Result<Self> {
        if digits.iter().any(|&d| d >= prime) {
            return Err(Error::Parse(format!("digit out of range for p = {prime}")));
        }
        let mut unit = BigUint::zero();
        for &d in digits.iter().rev() {
            unit = unit * prime + d;
        }
        Self::from_parts(prime, val, unit, prec)
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.prime == other.prime {
            Ok(())
        } else {
            Err(Error::PrimeMismatch(self.prime, other.prime))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.prime;
        let repr = match (&self.repr, &other.repr) {
            (Repr::ExactZero, _) => other.repr.clone(),
            (_, Repr::ExactZero) => self.repr.clone(),
            (Repr::ZeroBall { prec: a }, Repr::ZeroBall { prec: b }) => Repr::ZeroBall { prec: (*a).min(*b) },
            (Repr::ZeroBall { prec: m1 }, Repr::Ball { val, unit, prec: m2 })
            | (Repr::Ball { val, unit, prec: m2 }, Repr::ZeroBall { prec: m1 }) => {
                let prec = (*m1).min(*m2);
                if *val >= prec {
                    Repr::ZeroBall { prec }
                } else {
                    let unit = unit % p_pow(p, (prec - val) as u64);
                    Repr::Ball { val: *val, unit, prec }
                }
            }
            (Repr::Ball { val: v1, unit: u1, prec: m1 }, Repr::Ball { val: v2, unit: u2, prec: m2 }) => {
                let vmin = (*v1).min(*v2);
                let prec = (*m1).min(*m2);
                let modulus = p_pow(p, (prec - vmin) as u64);
                let s = (u1 * p_pow(p, (v1 - vmin) as u64) + u2 * p_pow(p, (v2 - vmin) as u64)) % &modulus;
                if s.is_zero() {
                    Repr::ZeroBall { prec }
                } else {
                    let mut unit = s;
                    let shift = strip_p(&mut unit, p);
                    Repr::Ball { val: vmin + shift, unit, prec }
                }
            }
        };
        Ok(PAdicScalar { prime: p, repr })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.clone().neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.prime;
        let repr = match (&self.repr, &other.repr) {
            (Repr::ExactZero, _) | (_, Repr::ExactZero) => Repr::ExactZero,
            (Repr::ZeroBall { prec: a }, Repr::ZeroBall { prec: b }) => Repr::ZeroBall { prec: a + b },
            (Repr::ZeroBall { prec }, Repr::Ball { val, .. }) | (Repr::Ball { val, .. }, Repr::ZeroBall { prec }) => {
                Repr::ZeroBall { prec: prec + val }
            }
            (Repr::Ball { val: v1, unit: u1, prec: m1 }, Repr::Ball { val: v2, unit: u2, prec: m2 }) => {
                let rel = (m1 - v1).min(m2 - v2);
                let unit = (u1 * u2) % p_pow(p, rel as u64);
                let val = v1 + v2;
                Repr::Ball { val, unit, prec: val + rel }
            }
        };
        Ok(PAdicScalar { prime: p, repr })
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.repr {
            Repr::ExactZero => Err(Error::DivisionByZero),
            Repr::ZeroBall { prec } => {
                Err(Error::PrecisionExhausted(format!("cannot invert O({}^{prec})", self.prime)))
            }
            Repr::Ball { val, unit, prec } => {
                let rel = prec - val;
                let unit = mod_inverse(unit, &p_pow(self.prime, rel as u64));
                Ok(PAdicScalar { prime: self.prime, repr: Repr::Ball { val: -val, unit, prec: -val + rel } })
            }
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut k: u32) -> Result<Self> {
        let mut base = self.clone();
        let mut acc: Option<PAdicScalar> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.try_mul(&base)?,
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc.unwrap_or_else(|| {
            let rel = self.relative_precision().unwrap_or(DEFAULT_PRECISION as i64);
            PAdicScalar::one(self.prime, rel.max(1) as u32)
        }))
    }

    /// Multiplication by an exact integer; keeps the relative precision.
    pub fn mul_int(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return PAdicScalar::exact_zero(self.prime);
        }
        let p = self.prime;
        let repr = match &self.repr {
            Repr::ExactZero => Repr::ExactZero,
            Repr::ZeroBall { prec } => {
                let mut m = k.magnitude().clone();
                Repr::ZeroBall { prec: prec + strip_p(&mut m, p) }
            }
            Repr::Ball { val, unit, prec } => {
                let rel = prec - val;
                let mut m = k.magnitude().clone();
                let shift = strip_p(&mut m, p);
                let modulus = p_pow(p, rel as u64);
                let signed = BigInt::from_biguint(k.sign(), m);
                let unit = signed_mod(&(BigInt::from(unit.clone()) * signed), &modulus);
                Repr::Ball { val: val + shift, unit, prec: val + shift + rel }
            }
        };
        PAdicScalar { prime: p, repr }
    }

    /// Division by an exact nonzero integer; keeps the relative precision.
    pub fn div_int(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.prime;
        let repr = match &self.repr {
            Repr::ExactZero => Repr::ExactZero,
            Repr::ZeroBall { prec } => {
                let mut m = k.magnitude().clone();
                Repr::ZeroBall { prec: prec - strip_p(&mut m, p) }
            }
            Repr::Ball { val, unit, prec } => {
                let rel = prec - val;
                let mut m = k.magnitude().clone();
                let shift = strip_p(&mut m, p);
                let modulus = p_pow(p, rel as u64);
                let inv = mod_inverse(&(&m % &modulus), &modulus);
                let signed = BigInt::from_biguint(k.sign(), inv);
                let unit = signed_mod(&(BigInt::from(unit.clone()) * signed), &modulus);
                Repr::Ball { val: val - shift, unit, prec: val - shift + rel }
            }
        };
        Ok(PAdicScalar { prime: p, repr })
    }

    /// Forgets every digit at or above `p^prec`.
    pub fn truncate_abs(&self, prec: i64) -> Self {
        let repr = match &self.repr {
            Repr::ExactZero => Repr::ZeroBall { prec },
            Repr::ZeroBall { prec: m } => Repr::ZeroBall { prec: (*m).min(prec) },
            Repr::Ball { val, unit, prec: m } => {
                let prec = (*m).min(prec);
                if *val >= prec {
                    Repr::ZeroBall { prec }
                } else {
                    Repr::Ball { val: *val, unit: unit % p_pow(self.prime, (prec - val) as u64), prec }
                }
            }
        };
        PAdicScalar { prime: self.prime, repr }
    }

    /// Whether the two balls intersect, i.e. `self - other` vanishes.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.try_sub(other)?.vanishes())
    }

    /// Exact rational value of the center `unit·p^val` (zero for zero balls).
    pub fn center(&self) -> BigRational {
        match &self.repr {
            Repr::Ball { val, unit, .. } => {
                let u = BigInt::from(unit.clone());
                let pb = BigInt::from(self.prime);
                if *val >= 0 {
                    BigRational::from_integer(u * pb.pow(*val as u32))
                } else {
                    BigRational::new(u, pb.pow((-val) as u32))
                }
            }
            _ => BigRational::zero(),
        }
    }

    /// Residue of the ball modulo `p`-adic integers, as a signed value in
    /// `(-p^k/2, p^k/2]`; used for compact display.
    fn signed_unit(&self) -> Option<BigInt> {
        let Repr::Ball { val, unit, prec } = &self.repr else {
            return None;
        };
        let m = BigInt::from(p_pow(self.prime, (prec - val) as u64));
        let u = BigInt::from(unit.clone());
        Some(if &u * 2 > m { u - m } else { u })
    }
}

impl Neg for PAdicScalar {
    type Output = PAdicScalar;
    fn neg(self) -> Self {
        let repr = match self.repr {
            Repr::Ball { val, unit, prec } => {
                let m = p_pow(self.prime, (prec - val) as u64);
                Repr::Ball { val, unit: m - unit, prec }
            }
            other => other,
        };
        PAdicScalar { prime: self.prime, repr }
    }
}

impl fmt::Display for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        match &self.repr {
            Repr::ExactZero => f.write_str("0"),
            Repr::ZeroBall { prec } => write!(f, "O({p}^{prec})"),
            Repr::Ball { val, prec, .. } => {
                let u = self.signed_unit().expect("ball");
                let small = u.abs().to_u64().filter(|&x| x < 1_000_000);
                match (small, *val) {
                    (Some(_), 0) => write!(f, "{u} + O({p}^{prec})"),
                    (Some(_), v) => write!(f, "{u}*{p}^{v} + O({p}^{prec})"),
                    (None, v) => write!(f, "[{} digits]*{p}^{v} + O({p}^{prec})", prec - val),
                }
            }
        }
    }
}

impl fmt::Debug for PAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
