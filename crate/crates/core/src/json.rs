//! JSON forms of scalars, vectors, matrices and series.
//!
//! A certified ball is `{"val": v, "unit": "d…d", "prec": M}` with the unit
//! written in base `p`, most significant digit first, padded to `M − v`
//! digits (digits `0-9a-z` for `p ≤ 36`, comma-separated decimals above).
//! Zero is `{"zero": true}`, a zero ball `{"zero": true, "prec": M}`.
//! Inputs may also give exact rationals, as `"a/b"` strings or integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::fnspace::{MultiIndex, MultiSeries};
use crate::linalg::{PMatrix, PVector};
use crate::padic::{ExtRational, PAdicScalar};
use crate::series::{BSeries, TailBound};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Ball {
        val: i64,
        unit: String,
        prec: i64,
    },
    Zero {
        zero: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        prec: Option<i64>,
    },
    Int(i64),
    Rational(String),
}

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

fn render_digits(digits_le: &[u32], p: u32) -> String {
    let msf = digits_le.iter().rev();
    if p <= 36 {
        msf.map(|&d| DIGITS[d as usize] as char).collect()
    } else {
        msf.map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn parse_digits(s: &str, p: u32) -> Result<Vec<u32>> {
    let bad = || Error::Parse(format!("bad base-{p} digit string {s:?}"));
    let mut out: Vec<u32> = if p <= 36 {
        s.chars().map(|c| c.to_digit(36).filter(|&d| d < p).ok_or_else(bad)).collect::<Result<_>>()?
    } else {
        s.split(',').map(|t| t.trim().parse::<u32>().ok().filter(|&d| d < p).ok_or_else(bad)).collect::<Result<_>>()?
    };
    out.reverse();
    Ok(out)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

pub fn render_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn scalar_to_json(x: &PAdicScalar) -> ScalarJson {
    if x.is_exact_zero() {
        return ScalarJson::Zero { zero: true, prec: None };
    }
    match (x.int_valuation(), x.unit_digits()) {
        (Some(val), Some(d)) => {
            ScalarJson::Ball { val, unit: render_digits(&d, x.prime()), prec: x.abs_precision().expect("ball") }
        }
        _ => ScalarJson::Zero { zero: true, prec: x.abs_precision() },
    }
}

/// Rationals are embedded with `cap` digits of relative precision.
pub fn scalar_from_json(j: &ScalarJson, p: u32, cap: u32) -> Result<PAdicScalar> {
    match j {
        ScalarJson::Ball { val, unit, prec } => PAdicScalar::from_unit_digits(p, *val, &parse_digits(unit, p)?, *prec),
        ScalarJson::Zero { zero: true, prec: None } => Ok(PAdicScalar::exact_zero(p)),
        ScalarJson::Zero { zero: true, prec: Some(m) } => Ok(PAdicScalar::zero_ball(p, *m)),
        ScalarJson::Zero { .. } => Err(Error::Parse("\"zero\" must be true".into())),
        ScalarJson::Int(n) => PAdicScalar::from_int(*n, p, cap),
        ScalarJson::Rational(s) => PAdicScalar::from_big_rational(&parse_rational(s)?, p, cap),
    }
}

pub fn vector_to_json(v: &PVector) -> Vec<ScalarJson> {
    v.entries().iter().map(scalar_to_json).collect()
}

pub fn vector_from_json(j: &[ScalarJson], p: u32, cap: u32) -> Result<PVector> {
    PVector::new(j.iter().map(|e| scalar_from_json(e, p, cap)).collect::<Result<_>>()?)
}

pub fn matrix_from_json(j: &[Vec<ScalarJson>], p: u32, cap: u32) -> Result<PMatrix> {
    let rows = j
        .iter()
        .map(|r| r.iter().map(|e| scalar_from_json(e, p, cap)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    PMatrix::new(rows)
}

pub fn matrix_to_json(a: &PMatrix) -> Vec<Vec<ScalarJson>> {
    a.rows().iter().map(|r| r.iter().map(scalar_to_json).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesJson<T> {
    pub truncation: usize,
    pub coeffs: Vec<T>,
    pub tail: Option<TailBound>,
}

pub fn series_to_json<C: Carrier, T>(y: &BSeries<C>, f: impl Fn(&C) -> T) -> SeriesJson<T> {
    SeriesJson { truncation: y.truncation(), coeffs: y.coeffs().iter().map(f).collect(), tail: y.tail() }
}

pub fn series_from_json<C: Carrier, T>(j: &SeriesJson<T>, f: impl Fn(&T) -> Result<C>) -> Result<BSeries<C>> {
    if j.coeffs.len() != j.truncation + 1 {
        return Err(Error::Parse(format!(
            "truncation {} needs {} coefficients, got {}",
            j.truncation,
            j.truncation + 1,
            j.coeffs.len()
        )));
    }
    BSeries::new(j.coeffs.iter().map(f).collect::<Result<_>>()?, j.tail)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub alpha: MultiIndex,
    pub value: ScalarJson,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiSeriesJson {
    pub nvars: usize,
    pub rho_exp: ExtRational,
    pub degree: usize,
    pub coeffs: Vec<TermJson>,
    /// Absent or `true` for an exact polynomial.
    #[serde(default = "default_true")]
    pub polynomial: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid_degree: Option<usize>,
}

pub fn multiseries_to_json(f: &MultiSeries) -> MultiSeriesJson {
    MultiSeriesJson {
        nvars: f.nvars(),
        rho_exp: ExtRational::Finite(f.rho_exp()),
        degree: f.degree(),
        coeffs: f.coeffs().iter().map(|(a, c)| TermJson { alpha: a.clone(), value: scalar_to_json(c) }).collect(),
        polynomial: f.is_polynomial(),
        valid_degree: (!f.is_polynomial()).then(|| f.valid_degree()),
    }
}

pub fn multiseries_from_json(j: &MultiSeriesJson, p: u32, cap: u32) -> Result<MultiSeries> {
    let s: Ratio<i64> =
        j.rho_exp.finite().ok_or_else(|| Error::Parse(format!("rho_exp must be finite, got {}", j.rho_exp)))?;
    let mut coeffs = BTreeMap::new();
    for t in &j.coeffs {
        if coeffs.insert(t.alpha.clone(), scalar_from_json(&t.value, p, cap)?).is_some() {
            return Err(Error::Parse(format!("repeated multi-index {:?}", t.alpha)));
        }
    }
    if j.polynomial {
        MultiSeries::polynomial(p, j.nvars, s, j.degree, coeffs)
    } else {
        let valid = j.valid_degree.unwrap_or(j.degree);
        MultiSeries::truncated(p, j.nvars, s, valid, coeffs).map(|f| f.with_degree(j.degree))
    }
}

/// Display-only decimal rendering of an exponent.
pub fn display_decimal(e: ExtRational) -> String {
    match e {
        ExtRational::Finite(_) => format!("{:.6}", e.to_f64()),
        other => other.to_string(),
    }
}
