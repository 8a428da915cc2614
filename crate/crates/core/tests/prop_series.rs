mod common;

use num_rational::Ratio;
use proptest::prelude::*;

use common::*;
use padic_cauchy::linalg::PVector;
use padic_cauchy::mittag::{ml_coefficients, MLSpec};
use padic_cauchy::padic::{ExtRational, PAdicScalar};
use padic_cauchy::series::{ar_norm, radius_lower_bound, series_derivative, series_eval_with, BSeries, SumOrder};

struct Case {
    p: u32,
    y: BSeries<PVector>,
    w: BSeries<PVector>,
}

fn case(p: u32, d: usize, a: &[Q], x: &[Q], x2: &[Q], m: usize, k: usize) -> Option<Case> {
    let a = pmat(&qmat(a, d, p), p);
    let spec = MLSpec::new(m, k % m, 12).unwrap();
    let y = ml_coefficients(&a, &pvec(&qvec(x, d, p), p), &spec).ok()?;
    let w = ml_coefficients(&a, &pvec(&qvec(x2, d, p), p), &spec).ok()?;
    Some(Case { p, y, w })
}

/// A point `p^e` strictly inside the certified disk of both series.
fn inside(c: &Case, extra: i64) -> PAdicScalar {
    let tau = radius_lower_bound(&c.y).tau.max(radius_lower_bound(&c.w).tau);
    let e = tau.floor().unwrap_or(0).max(-4) + 1 + extra;
    scalar((1, 1, e as i32), c.p)
}

fn series_data() -> impl Strategy<Value = (u32, usize, Vec<Q>, Vec<Q>, Vec<Q>, usize, usize)> {
    (
        prime(),
        1usize..=3,
        prop::collection::vec(sparse_q(), 9),
        prop::collection::vec(nonzero_q(), 3),
        prop::collection::vec(nonzero_q(), 3),
        1usize..=3,
        0usize..3,
    )
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn derivative_keeps_the_radius((p, d, a, x, x2, m, k) in series_data(), i in 1usize..=3) {
        let Some(c) = case(p, d, &a, &x, &x2, m, k) else { return Ok(()) };
        let r = radius_lower_bound(&c.y);
        let dr = radius_lower_bound(&series_derivative(&c.y, i).unwrap());
        prop_assert!(r.certified && dr.certified);
        prop_assert!(dr.tau <= r.tau);
    }

    #[test]
    fn evaluation_is_linear((p, d, a, x, x2, m, k) in series_data(), extra in 0i64..=2) {
        let Some(c) = case(p, d, &a, &x, &x2, m, k) else { return Ok(()) };
        let z = inside(&c, extra);
        let sum = c.y.try_add(&c.w).unwrap();
        let (fy, fw, fs) = (
            series_eval_with(&c.y, &z, SumOrder::Horner).unwrap(),
            series_eval_with(&c.w, &z, SumOrder::Horner).unwrap(),
            series_eval_with(&sum, &z, SumOrder::Horner).unwrap(),
        );
        let err = fy.error_exponent.min(fw.error_exponent).min(fs.error_exponent);
        let diff = fs.value.entries().iter().zip(fy.value.entries()).zip(fw.value.entries())
            .map(|((s, u), v)| s.try_sub(u).unwrap().try_sub(v).unwrap());
        for e in diff {
            prop_assert!(e.vanishes() || e.valuation_lower_bound() >= err);
        }
    }

    #[test]
    fn horner_and_direct_sums_agree((p, d, a, x, x2, m, k) in series_data(), extra in 0i64..=2) {
        let Some(c) = case(p, d, &a, &x, &x2, m, k) else { return Ok(()) };
        let z = inside(&c, extra);
        let h = series_eval_with(&c.y, &z, SumOrder::Horner).unwrap();
        let dv = series_eval_with(&c.y, &z, SumOrder::Direct).unwrap();
        prop_assert_eq!(h.error_exponent, dv.error_exponent);
        prop_assert!(vec_agrees(&h.value, &dv.value));
    }

    #[test]
    fn ar_norm_does_not_grow_as_r_shrinks(
        (p, d, a, x, x2, m, k) in series_data(),
        steps in (1i64..=8, 1i64..=8),
    ) {
        let Some(c) = case(p, d, &a, &x, &x2, m, k) else { return Ok(()) };
        let base = match radius_lower_bound(&c.y).tau {
            ExtRational::Finite(t) => t,
            _ => Ratio::from_integer(0),
        };
        let t1 = ExtRational::Finite(base + Ratio::new(steps.0, 4));
        let t2 = t1 + ExtRational::new(steps.1, 4);
        let (n1, n2) = (ar_norm(&c.y, t1), ar_norm(&c.y, t2));
        prop_assert!(n2.exponent <= n1.exponent);
        prop_assert!(n2.upper <= n1.upper);
    }
}
