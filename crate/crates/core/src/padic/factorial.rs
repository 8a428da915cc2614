//! Factorial valuations and the two-sided estimate on `1/|n!|_p`.

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use crate::padic::ext::ExtRational;

/// `v_p(n!)` by Legendre's formula `Σ ⌊n/p^i⌋`.
pub fn factorial_valuation(n: u64, p: u32) -> u64 {
    let p = p as u64;
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(mut n: u64, p: u32) -> u64 {
    let p = p as u64;
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// The three sides of `p^{n/(p-1)}/(np) ≤ 1/|n!|_p ≤ p^{(n-1)/(p-1)}`, on the
/// log-`p` scale.
///
/// The lower side contains `log_p(np)`, which is irrational in general, so it
/// is kept as the pair `(lower_power, lower_divisor)` meaning
/// `p^{lower_power} / lower_divisor`; comparisons are exact integer checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorialBounds {
    pub n: u64,
    pub p: u32,
    pub lower_power: ExtRational,
    pub lower_divisor: u64,
    /// `v_p(n!)`, i.e. `log_p(1/|n!|_p)`.
    pub exact: u64,
    pub upper: ExtRational,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl FactorialBounds {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

pub fn factorial_norm_bounds(n: u64, p: u32) -> FactorialBounds {
    assert!(n >= 1, "factorial bounds need n >= 1");
    let pm1 = p as i64 - 1;
    let exact = factorial_valuation(n, p);
    let s = digit_sum(n, p);
    // p^{n/(p-1)}/(np) ≤ p^{v}  ⇔  p^n ≤ (np)^{p-1} · p^{v(p-1)} = (np)^{p-1} · p^{n-s}
    //                            ⇔  p^s ≤ (np)^{p-1}
    let lhs = BigUint::from(p).pow(s as u32);
    let rhs = Pow::pow(BigUint::from(n) * p, p - 1);
    // p^v ≤ p^{(n-1)/(p-1)}  ⇔  v(p-1) ≤ n-1
    let upper_holds = (exact as i64) * pm1 < n as i64;
    FactorialBounds {
        n,
        p,
        lower_power: ExtRational::new(n as i64, pm1),
        lower_divisor: n * p as u64,
        exact,
        upper: ExtRational::new(n as i64 - 1, pm1),
        lower_holds: lhs <= rhs,
        upper_holds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts factors of `p` in every term of `n!` one by one.
    fn brute_valuation(n: u64, p: u64) -> u64 {
        (1..=n)
            .map(|mut k| {
                let mut c = 0;
                while k % p == 0 {
                    k /= p;
                    c += 1;
                }
                c
            })
            .sum()
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(factorial_valuation(1, 7), 0);
        assert_eq!(factorial_valuation(4, 2), 3);
        assert_eq!(factorial_valuation(9, 3), 4);
        assert_eq!(factorial_valuation(0, 5), 0);
    }

    #[test]
    fn legendre_matches_brute_force() {
        for p in [2u32, 3, 5, 7, 11] {
            for n in 0..400 {
                assert_eq!(factorial_valuation(n, p), brute_valuation(n, p as u64));
            }
        }
    }

    #[test]
    fn bounds_examples() {
        let b = factorial_norm_bounds(4, 2);
        assert_eq!(b.exact, 3);
        assert_eq!(b.upper, ExtRational::int(3));
        assert!(b.holds());

        let b = factorial_norm_bounds(1, 5);
        assert_eq!((b.exact, b.upper), (0, ExtRational::ZERO));
        assert!(b.holds());

        // lower side 2^2/(2·2) = 1 ≤ 2^1
        let b = factorial_norm_bounds(2, 2);
        assert_eq!((b.exact, b.upper), (1, ExtRational::int(1)));
        assert_eq!((b.lower_power, b.lower_divisor), (ExtRational::int(2), 4));
        assert!(b.holds());
    }
}
