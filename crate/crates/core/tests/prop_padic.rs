mod common;

use num_traits::Zero;
use proptest::prelude::*;

use common::{big, config, lift, nonzero_q, prime, q, scalar, vp};
use padic_cauchy::padic::{digit_sum, factorial_norm_bounds, factorial_valuation, ExtRational};

fn legendre(n: u64, p: u32) -> u64 {
    let p = p as u64;
    let (mut pk, mut sum) = (p, 0);
    while pk <= n {
        sum += n / pk;
        pk = match pk.checked_mul(p) {
            Some(x) => x,
            None => break,
        };
    }
    sum
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn valuation_matches_rational(p in prime(), x in nonzero_q()) {
        let v = scalar(x, p).valuation().unwrap();
        prop_assert_eq!(v, ExtRational::int(vp(&big(x, p), p)));
    }

    #[test]
    fn ultrametric(p in prime(), x in nonzero_q(), y in nonzero_q()) {
        let (a, b) = (scalar(x, p), scalar(y, p));
        let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
        let exact = big(x, p) + big(y, p);
        prop_assume!(!exact.is_zero());
        let vs = a.try_add(&b).unwrap().valuation().unwrap();
        prop_assert!(vs >= va.min(vb));
        if va != vb {
            prop_assert_eq!(vs, va.min(vb));
        }
    }

    #[test]
    fn multiplicative(p in prime(), x in nonzero_q(), y in nonzero_q()) {
        let (a, b) = (scalar(x, p), scalar(y, p));
        let v = a.try_mul(&b).unwrap().valuation().unwrap();
        prop_assert_eq!(v, a.valuation().unwrap() + b.valuation().unwrap());
    }

    #[test]
    fn arithmetic_agrees_with_rationals(p in prime(), x in q(), y in nonzero_q()) {
        let (qa, qb) = (big(x, p), big(y, p));
        let (a, b) = (lift(&qa, p), lift(&qb, p));
        prop_assert!(a.try_add(&b).unwrap().agrees_with(&lift(&(&qa + &qb), p)).unwrap());
        prop_assert!(a.try_sub(&b).unwrap().agrees_with(&lift(&(&qa - &qb), p)).unwrap());
        prop_assert!(a.try_mul(&b).unwrap().agrees_with(&lift(&(&qa * &qb), p)).unwrap());
        prop_assert!(a.try_div(&b).unwrap().agrees_with(&lift(&(&qa / &qb), p)).unwrap());
    }

    #[test]
    fn legendre_identity(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 101]), n in 0u64..1_000_000_000) {
        let v = factorial_valuation(n, p);
        prop_assert_eq!(v, legendre(n, p));
        prop_assert_eq!(v * (p as u64 - 1), n - digit_sum(n, p));
    }

    #[test]
    fn factorial_sandwich(p in prime(), n in 1u64..1_000_000) {
        let b = factorial_norm_bounds(n, p);
        prop_assert!(b.holds());
        prop_assert_eq!(b.exact, legendre(n, p));
        // the same inequalities in floating point, with slack
        let (nf, pf, v) = (n as f64, p as f64, b.exact as f64);
        prop_assert!(nf / (pf - 1.0) - (nf * pf).ln() / pf.ln() <= v + 1e-9);
        prop_assert!(v <= (nf - 1.0) / (pf - 1.0) + 1e-9);
    }
}

#[test]
fn factorial_valuation_small_table() {
    // v_2(10!) = 8, v_3(10!) = 4, v_5(25!) = 6
    assert_eq!(factorial_valuation(10, 2), 8);
    assert_eq!(factorial_valuation(10, 3), 4);
    assert_eq!(factorial_valuation(25, 5), 6);
    assert_eq!(factorial_valuation(0, 7), 0);
}
