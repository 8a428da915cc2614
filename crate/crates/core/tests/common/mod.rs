#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use padic_cauchy::linalg::{PMatrix, PVector};
use padic_cauchy::padic::{ExtRational, PAdicScalar};

pub const CAP: u32 = 64;

/// `num/den · p^shift`, kept as raw integers so one strategy serves every
/// prime.
pub type Q = (i64, i64, i32);

pub fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7])
}

pub fn q() -> impl Strategy<Value = Q> {
    (-60i64..=60, 1i64..=30, -3i32..=3)
}

pub fn nonzero_q() -> impl Strategy<Value = Q> {
    q().prop_filter("nonzero", |x| x.0 != 0)
}

/// A sparse entry: zero about a third of the time.
pub fn sparse_q() -> impl Strategy<Value = Q> {
    prop_oneof![1 => Just((0, 1, 0)), 2 => nonzero_q()]
}

pub fn big(x: Q, p: u32) -> BigRational {
    let (n, d, s) = x;
    let pp = BigInt::from(p).pow(s.unsigned_abs());
    let r = BigRational::new(BigInt::from(n), BigInt::from(d));
    if s >= 0 {
        r * pp
    } else {
        r / pp
    }
}

pub fn scalar(x: Q, p: u32) -> PAdicScalar {
    PAdicScalar::from_big_rational(&big(x, p), p, CAP).unwrap()
}

pub fn lift(q: &BigRational, p: u32) -> PAdicScalar {
    PAdicScalar::from_big_rational(q, p, CAP).unwrap()
}

/// `v_p` of a nonzero rational, by repeated division.
pub fn vp(q: &BigRational, p: u32) -> i64 {
    assert!(!q.is_zero());
    let pb = BigInt::from(p);
    let count = |mut n: BigInt| {
        let mut v = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            v += 1;
        }
        v
    };
    count(q.numer().abs()) - count(q.denom().abs())
}

pub type QMat = Vec<Vec<BigRational>>;
pub type QVec = Vec<BigRational>;

pub fn qmat(entries: &[Q], d: usize, p: u32) -> QMat {
    (0..d).map(|i| (0..d).map(|j| big(entries[i * d + j], p)).collect()).collect()
}

pub fn qvec(entries: &[Q], d: usize, p: u32) -> QVec {
    entries[..d].iter().map(|&x| big(x, p)).collect()
}

pub fn pmat(a: &QMat, p: u32) -> PMatrix {
    PMatrix::new(a.iter().map(|r| r.iter().map(|x| lift(x, p)).collect()).collect()).unwrap()
}

pub fn pvec(x: &QVec, p: u32) -> PVector {
    PVector::new(x.iter().map(|q| lift(q, p)).collect()).unwrap()
}

pub fn qapply(a: &QMat, x: &QVec) -> QVec {
    a.iter().map(|row| row.iter().zip(x).fold(BigRational::zero(), |acc, (r, v)| acc + r * v)).collect()
}

pub fn is_zero_vec(x: &QVec) -> bool {
    x.iter().all(Zero::is_zero)
}

/// Exact row reduction; returns the solution of `M c = b` when the columns
/// of `M` are independent and the system is consistent, and the rank of
/// `M` either way.
pub fn solve_exact(cols: &[QVec], b: Option<&QVec>) -> (usize, Option<QVec>) {
    let rows = cols.first().map_or(0, Vec::len);
    let ncols = cols.len();
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|i| {
            let mut r: Vec<_> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(b.map_or_else(BigRational::zero, |b| b[i].clone()));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows).find(|&k| !m[k][c].is_zero()) else { continue };
        m.swap(r, k);
        let inv = BigRational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rank = r;
    if rank < ncols || m[rank..].iter().any(|row| !row[ncols].is_zero()) {
        return (rank, None);
    }
    let mut sol = vec![BigRational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = m[i][ncols].clone();
    }
    (rank, Some(sol))
}

/// The minimal polynomial of `x` under `A` over `Q`, monic, constant term
/// first.
pub fn exact_minpoly(a: &QMat, x: &QVec) -> Vec<BigRational> {
    let mut krylov = vec![x.clone()];
    loop {
        let next = qapply(a, krylov.last().unwrap());
        let (_, sol) = solve_exact(&krylov, Some(&next));
        if let Some(c) = sol {
            let mut mu: Vec<_> = c.into_iter().map(|v| -v).collect();
            mu.push(BigRational::one());
            return mu;
        }
        krylov.push(next);
    }
}

/// `log_p` of the largest root of a monic polynomial:
/// `max_{i<d} −v(c_i)/(d−i)`.
pub fn largest_root_exponent(mu: &[BigRational], p: u32) -> ExtRational {
    let d = mu.len() - 1;
    mu[..d]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| ExtRational::new(-vp(c, p), (d - i) as i64))
        .max()
        .unwrap_or(ExtRational::NegInf)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn vec_agrees(a: &PVector, b: &PVector) -> bool {
    a.entries().iter().zip(b.entries()).all(|(x, y)| x.agrees_with(y).unwrap())
}

/// Matrix and vector data of dimension `1..=3`.
pub fn matrix_data() -> impl Strategy<Value = (u32, usize, Vec<Q>, Vec<Q>)> {
    (prime(), 1usize..=3, prop::collection::vec(sparse_q(), 9), prop::collection::vec(nonzero_q(), 3))
}

/// Integration tests have no `lib.rs` beside them to persist failures to.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
