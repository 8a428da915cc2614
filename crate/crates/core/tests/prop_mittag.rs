mod common;

use num_rational::BigRational;
use proptest::prelude::*;

use common::*;
use padic_cauchy::mittag::{ml_coefficients, ml_derivative, ml_radius, ml_series, MLSpec};
use padic_cauchy::series::series_derivative;
use padic_cauchy::{Carrier, Error};

proptest! {
    #![proptest_config(config(64))]

    /// `c_{mj+k} = A^j x / (mj+k)!`, every other coefficient zero, checked
    /// against exact rational arithmetic.
    #[test]
    fn coefficients_match_exact_orbit((p, d, a, x) in matrix_data(), m in 1usize..=3, k in 0usize..3) {
        let k = k % m;
        let (qa, qx) = (qmat(&a, d, p), qvec(&x, d, p));
        let y = match ml_coefficients(&pmat(&qa, p), &pvec(&qx, p), &MLSpec::new(m, k, 8).unwrap()) {
            Ok(y) => y,
            Err(Error::PrecisionExhausted(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let mut orbit = qx.clone();
        for j in 0..=8 {
            let n = m * j + k;
            let f = BigRational::from_integer(factorial(n));
            let expect: QVec = orbit.iter().map(|v| v / &f).collect();
            prop_assert!(vec_agrees(y.coeff(n).unwrap(), &pvec(&expect, p)), "n = {}", n);
            for r in 1..m {
                if n + r <= y.truncation() {
                    prop_assert!(y.coeff(n + r).unwrap().is_exact_zero());
                }
            }
            orbit = qapply(&qa, &orbit);
        }
    }

    #[test]
    fn radius_does_not_depend_on_k((p, d, a, x) in matrix_data(), m in 1usize..=3) {
        let (a, x) = (pmat(&qmat(&a, d, p), p), pvec(&qvec(&x, d, p), p));
        let mut slopes = Vec::new();
        for k in 0..m {
            match ml_series(&a, &x, &MLSpec::new(m, k, 10).unwrap()) {
                Ok(s) => {
                    let sigma = s.orbit.as_ref().unwrap().sigma_exp;
                    let t = s.series.tail().unwrap();
                    if !t.is_zero() {
                        prop_assert_eq!(t.threshold(), ml_radius(sigma, m, p));
                    }
                    slopes.push(t.slope);
                }
                Err(Error::PrecisionExhausted(_)) => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        prop_assert!(slopes.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn derivatives_and_initial_values((p, d, a, x) in matrix_data(), m in 1usize..=3, k in 0usize..3, i in 1usize..=4) {
        let k = k % m;
        let (a, x) = (pmat(&qmat(&a, d, p), p), pvec(&qvec(&x, d, p), p));
        let spec = MLSpec::new(m, k, 8).unwrap();
        let Ok(f) = ml_coefficients(&a, &x, &spec) else { return Ok(()) };
        // F_k^{(j)}(0) = δ_jk x for j < m
        for j in 0..m {
            let c0 = series_derivative(&f, j).unwrap().coeff(0).unwrap().clone();
            if j == k {
                prop_assert!(vec_agrees(&c0, &x));
            } else {
                prop_assert!(c0.is_exact_zero());
            }
        }
        let direct = series_derivative(&f, i).unwrap();
        let Ok(relation) = ml_derivative(&a, &x, &spec, i) else { return Ok(()) };
        let upto = direct.truncation().min(relation.truncation());
        for n in 0..=upto {
            prop_assert!(vec_agrees(direct.coeff(n).unwrap(), relation.coeff(n).unwrap()), "n = {}", n);
        }
    }

    #[test]
    fn radius_is_stable_under_powers((p, d, a, x) in matrix_data(), m in 1usize..=3, l in 1usize..=3) {
        let (qa, qx) = (qmat(&a, d, p), qvec(&x, d, p));
        let mut qy = qx.clone();
        for _ in 0..l {
            qy = qapply(&qa, &qy);
        }
        prop_assume!(!is_zero_vec(&qy));
        let a = pmat(&qa, p);
        let spec = MLSpec::new(m, 0, 10).unwrap();
        let (Ok(fx), Ok(fy)) = (ml_series(&a, &pvec(&qx, p), &spec), ml_series(&a, &pvec(&qy, p), &spec)) else {
            return Ok(());
        };
        let (sx, sy) = (fx.orbit.unwrap().sigma_exp, fy.orbit.unwrap().sigma_exp);
        prop_assert_eq!(sx, sy);
        prop_assert_eq!(ml_radius(sx, m, p), ml_radius(sy, m, p));
    }
}
