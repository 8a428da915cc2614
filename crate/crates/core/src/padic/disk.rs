use serde::{Deserialize, Serialize};

use crate::padic::{ExtRational, PAdicScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Openness {
    Open,
    Closed,
}

/// A disk `{z : |z|_p < r}` (open) or `{z : |z|_p ≤ r}` (closed) centred at
/// zero, with `r = p^{-threshold}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disk {
    pub threshold: ExtRational,
    pub openness: Openness,
}

impl Disk {
    pub fn open(threshold: ExtRational) -> Self {
        Disk { threshold, openness: Openness::Open }
    }

    pub fn closed(threshold: ExtRational) -> Self {
        Disk { threshold, openness: Openness::Closed }
    }

    /// Membership by valuation: `v(z) > τ` (open) or `v(z) ≥ τ` (closed).
    /// Balls whose valuation is not certified are only admitted when their
    /// lower bound already decides membership.
    pub fn contains(&self, z: &PAdicScalar) -> bool {
        let v = z.valuation_lower_bound();
        match self.openness {
            Openness::Open => v > self.threshold,
            Openness::Closed => v >= self.threshold,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_versus_closed() {
        let two = PAdicScalar::from_int(2, 2, 16).unwrap();
        assert!(!Disk::open(ExtRational::int(1)).contains(&two));
        assert!(Disk::closed(ExtRational::int(1)).contains(&two));
        assert!(Disk::open(ExtRational::new(1, 2)).contains(&two));
        assert!(Disk::open(ExtRational::NegInf).contains(&two));
        assert!(Disk::open(ExtRational::int(100)).contains(&PAdicScalar::exact_zero(2)));
    }
}
