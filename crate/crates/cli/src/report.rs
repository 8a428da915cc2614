use padic_cauchy::json::display_decimal;
use padic_cauchy::padic::ExtRational;
use serde::{Deserialize, Serialize};

use crate::problem::ProblemFile;

/// An exponent as an exact rational, with a decimal rendering that is for
/// reading only and never parsed back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Exponent {
    pub exact: ExtRational,
    pub display_only: String,
}

impl From<ExtRational> for Exponent {
    fn from(e: ExtRational) -> Self {
        Exponent { exact: e, display_only: display_decimal(e) }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// The common envelope. `timing` is the only field that varies between
/// runs on identical input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report<R, V> {
    pub schema_version: u32,
    pub kind: String,
    pub inputs: Option<ProblemFile>,
    pub results: R,
    pub verification: V,
    pub timing: Timing,
}
