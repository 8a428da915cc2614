//! Problem files. Every kind carries `schema_version`, the prime `p` and an
//! optional precision cap; unknown fields are rejected.

use padic_cauchy::json::{MultiSeriesJson, ScalarJson};
use padic_cauchy::padic::ExtRational;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProblemFile {
    Ode(OdeProblem),
    Pde(PdeProblem),
    Type(TypeProblem),
    Ml(MlProblem),
    FactorialBounds(FactorialProblem),
}

impl ProblemFile {
    pub fn schema_version(&self) -> u32 {
        match self {
            ProblemFile::Ode(x) => x.schema_version,
            ProblemFile::Pde(x) => x.schema_version,
            ProblemFile::Type(x) => x.schema_version,
            ProblemFile::Ml(x) => x.schema_version,
            ProblemFile::FactorialBounds(x) => x.schema_version,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ProblemFile::Ode(_) => "ode",
            ProblemFile::Pde(_) => "pde",
            ProblemFile::Type(_) => "type",
            ProblemFile::Ml(_) => "ml",
            ProblemFile::FactorialBounds(_) => "factorial-bounds",
        }
    }
}

/// `y^(m) = A y`, `y^(k)(0) = initial[k]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OdeProblem {
    pub schema_version: u32,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub m: usize,
    pub matrix: Vec<Vec<ScalarJson>>,
    pub initial: Vec<Vec<ScalarJson>>,
    pub truncation: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorTerm {
    pub beta: Vec<u32>,
    pub coeff: MultiSeriesJson,
}

/// `∂^m u/∂t^m = Σ a_β D^β u`, `∂^k u/∂t^k (0, x) = initial[k]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PdeProblem {
    pub schema_version: u32,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub m: usize,
    pub operator: Vec<OperatorTerm>,
    pub initial: Vec<MultiSeriesJson>,
    pub truncation: usize,
    /// Total degree in `x` up to which the output is exact.
    pub degree: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeProblem {
    pub schema_version: u32,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub matrix: Vec<Vec<ScalarJson>>,
    pub vector: Vec<ScalarJson>,
    /// Also report the empirical orbit-growth estimate over `n ≤ n_max`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    /// Also report `‖x‖_α` for `α = p^alpha_exp`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_exp: Option<ExtRational>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MlProblem {
    pub schema_version: u32,
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    pub matrix: Vec<Vec<ScalarJson>>,
    pub vector: Vec<ScalarJson>,
    pub m: usize,
    pub k: usize,
    pub truncation: usize,
    /// Evaluate `F_k(z; A)x` at this point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<ScalarJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorialProblem {
    pub schema_version: u32,
    pub p: u32,
    pub n_max: u64,
}
