mod common;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use proptest::prelude::*;

use common::*;
use padic_cauchy::fnspace::{
    a_rho_norm, diffop_apply, diffop_norm_bound, multiply, partial_derivative, pde_solve, DiffOp, MultiSeries,
};
use padic_cauchy::padic::{ExtRational, PAdicScalar};
use padic_cauchy::Carrier;

type Terms = Vec<((u32, u32), Q)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0u32..=2, 0u32..=2), nonzero_q()), 1..=5)
}

/// Total degree at most 2, so products stay within the bound 4.
fn small_terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec(((0u32..=1, 0u32..=1), nonzero_q()), 1..=4)
}

fn poly(p: u32, nvars: usize, s: i64, degree: usize, t: &Terms) -> MultiSeries {
    let coeffs = t.iter().map(|&((a, b), x)| {
        let alpha = if nvars == 1 { vec![a + b] } else { vec![a, b] };
        (alpha, scalar(x, p))
    });
    MultiSeries::polynomial(p, nvars, Ratio::new(s, 2), degree, coeffs).unwrap()
}

fn norm(f: &MultiSeries) -> ExtRational {
    let n = a_rho_norm(f);
    assert!(n.certified);
    n.exponent
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn partial_derivative_bound(p in prime(), nvars in 1usize..=2, s in -4i64..=4, t in terms()) {
        let f = poly(p, nvars, s, 4, &t);
        let s = ExtRational::new(s, 2);
        for j in 0..nvars {
            let df = partial_derivative(&f, j).unwrap();
            prop_assert!(norm(&df) <= norm(&f) - s);
            // equality at the coordinate function
            let x = MultiSeries::variable(p, nvars, j, f.rho_exp(), 4, CAP);
            prop_assert_eq!(norm(&partial_derivative(&x, j).unwrap()), norm(&x) - s);
        }
    }

    #[test]
    fn product_bound(p in prime(), nvars in 1usize..=2, s in -4i64..=4, t in small_terms(), u in small_terms()) {
        let (f, g) = (poly(p, nvars, s, 4, &t), poly(p, nvars, s, 4, &u));
        let fg = multiply(&f, &g).unwrap();
        prop_assert!(fg.is_polynomial());
        prop_assert!(norm(&fg) <= norm(&f) + norm(&g));
        let one = MultiSeries::constant(PAdicScalar::one(p, CAP), nvars, f.rho_exp(), 4);
        prop_assert_eq!(norm(&multiply(&f, &one).unwrap()), norm(&f));
    }

    #[test]
    fn mixed_partials_commute(p in prime(), s in -4i64..=4, t in terms()) {
        let f = poly(p, 2, s, 4, &t);
        let a = partial_derivative(&partial_derivative(&f, 0).unwrap(), 1).unwrap();
        let b = partial_derivative(&partial_derivative(&f, 1).unwrap(), 0).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn operator_bound(
        p in prime(),
        nvars in 1usize..=2,
        s in -4i64..=4,
        ops in prop::collection::vec(((0u32..=1, 0u32..=1), terms()), 1..=3),
        t in terms(),
    ) {
        let op = DiffOp::new(ops.iter().map(|((a, b), c)| {
            let beta = if nvars == 1 { vec![a + b] } else { vec![*a, *b] };
            (beta, poly(p, nvars, s, 4, c))
        }));
        let Ok(op) = op else { return Ok(()) };
        let f = poly(p, nvars, s, 8, &t);
        let af = diffop_apply(&op, &f).unwrap();
        prop_assert!(a_rho_norm(&af).exponent <= diffop_norm_bound(&op) + norm(&f));
    }

    /// `∂u/∂t = ∂u/∂x` is solved by `u(t, x) = φ(x + t)`, whose `t^n`
    /// coefficient has `C(j+n, n) φ_{j+n}` at `x^j`.
    #[test]
    fn translation_matches_binomial_expansion(
        p in prime(),
        coeffs in prop::collection::vec(q(), 1..=5),
    ) {
        let deg = coeffs.len() - 1;
        let phi: Vec<BigRational> = coeffs.iter().map(|&c| big(c, p)).collect();
        let data = MultiSeries::polynomial(
            p, 1, Ratio::from_integer(0), deg,
            phi.iter().enumerate().map(|(j, c)| (vec![j as u32], lift(c, p))),
        ).unwrap();
        let one = MultiSeries::constant(PAdicScalar::one(p, CAP), 1, Ratio::from_integer(0), 0);
        let d = DiffOp::new([(vec![1], one)]).unwrap();
        let sol = pde_solve(1, &d, &[data], deg + 2, deg).unwrap();
        for n in 0..=deg + 2 {
            let c = sol.series.coeff(n).unwrap();
            for j in 0..=deg {
                let expect = if j + n <= deg {
                    BigRational::from_integer(binomial(j + n, n)) * &phi[j + n]
                } else {
                    BigRational::zero()
                };
                prop_assert!(c.coeff(&[j as u32]).agrees_with(&lift(&expect, p)).unwrap(), "t^{} x^{}", n, j);
            }
        }
        prop_assert!(sol.radius_threshold <= ExtRational::inv_p_minus_one(p));
    }

    #[test]
    fn disk_threshold_is_below_the_norm_bound(
        p in prime(),
        s in -4i64..=4,
        m in 1usize..=2,
        c in terms(),
        t in terms(),
    ) {
        let op = DiffOp::new([(vec![1], poly(p, 1, s, 4, &c))]).unwrap();
        let phi = poly(p, 1, s, 4, &t);
        let zero = phi.zero_like();
        let data: Vec<_> = (0..m).map(|k| if k == 0 { phi.clone() } else { zero.clone() }).collect();
        let sol = pde_solve(m, &op, &data, 4, 2).unwrap();
        let bound = ml_threshold(diffop_norm_bound(&op), m, p);
        prop_assert!(sol.radius_threshold <= bound);
    }
}

fn ml_threshold(e: ExtRational, m: usize, p: u32) -> ExtRational {
    match e {
        ExtRational::Finite(x) => ExtRational::Finite(x / m as i64) + ExtRational::inv_p_minus_one(p),
        other => other,
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}
