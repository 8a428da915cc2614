//! Scalars, exponents and factorial valuations over `Q_p`.

mod disk;
mod ext;
mod factorial;
mod scalar;

pub use disk::{Disk, Openness};
pub use ext::ExtRational;
pub use factorial::{digit_sum, factorial_norm_bounds, factorial_valuation, FactorialBounds};
pub use scalar::{is_prime, PAdicScalar, DEFAULT_PRECISION};

use crate::error::{Error, Result};

/// Runs `f` at the precision cap `cap`, doubling it (at most twice) while the
/// attempt fails with [`Error::PrecisionExhausted`].
pub fn with_precision_retry<T>(cap: u32, mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
    let mut cap = cap;
    let mut attempts = 0;
    loop {
        match f(cap) {
            Err(Error::PrecisionExhausted(_)) if attempts < 2 => {
                attempts += 1;
                cap *= 2;
            }
            Err(Error::PrecisionExhausted(site)) => {
                return Err(Error::PrecisionExhausted(format!("{site} (still failing at {cap} digits)")))
            }
            other => return other,
        }
    }
}

/// `n!` embedded with `cap` digits.
pub fn factorial_scalar(n: u64, prime: u32, cap: u32) -> PAdicScalar {
    let mut f = num_bigint::BigInt::from(1);
    for k in 2..=n {
        f *= k;
    }
    PAdicScalar::from_bigint(&f, prime, cap).expect("factorial embeds")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn retry_doubles_then_surfaces() {
        let mut seen = vec![];
        let r: Result<()> = with_precision_retry(8, |cap| {
            seen.push(cap);
            Err(Error::PrecisionExhausted("here".into()))
        });
        assert_eq!(seen, vec![8, 16, 32]);
        assert!(matches!(r, Err(Error::PrecisionExhausted(_))));

        let r =
            with_precision_retry(8, |cap| if cap < 16 { Err(Error::PrecisionExhausted("x".into())) } else { Ok(cap) });
        assert_eq!(r.unwrap(), 16);
    }
}
