use std::time::Instant;

use padic_cauchy::cauchy::{solve_with, verify_residual, CauchyProblem, CauchySolution, ResidualReport, SolveOptions};
use padic_cauchy::fnspace::{diffop_norm_bound, pde_problem, DiffOp};
use padic_cauchy::json::{
    matrix_from_json, multiseries_from_json, multiseries_to_json, scalar_from_json, series_from_json, series_to_json,
    vector_from_json, vector_to_json, MultiSeriesJson, ScalarJson, SeriesJson,
};
use padic_cauchy::linalg::{
    e_alpha_norm, entire_vector_check, orbit_growth_estimate, vector_type, PMatrix, TypeMethod,
};
use padic_cauchy::mittag::{ml_series, MLSpec};
use padic_cauchy::padic::{
    factorial_norm_bounds, is_prime, with_precision_retry, ExtRational, FactorialBounds, DEFAULT_PRECISION,
};
use padic_cauchy::series::series_eval;
use padic_cauchy::{Carrier, Error, Result};
use serde::{Deserialize, Serialize};

use crate::problem::{FactorialProblem, MlProblem, OdeProblem, PdeProblem, ProblemFile, TypeProblem, SCHEMA_VERSION};
use crate::report::{Exponent, Report, Timing};

/// Command-line overrides of problem-file fields.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub p: Option<u32>,
    pub precision: Option<u32>,
    pub truncation: Option<usize>,
    pub degree: Option<usize>,
    pub threads: Option<usize>,
}

pub struct Outcome {
    pub json: String,
    pub summary: String,
    /// `false` maps to the verification-failure exit code.
    pub verified: bool,
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

fn check_version(v: u32) -> Result<()> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(Error::Parse(format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}")))
    }
}

fn finish<R: Serialize, V: Serialize>(
    kind: &str,
    inputs: Option<ProblemFile>,
    results: R,
    verification: V,
    started: Instant,
    summary: String,
    verified: bool,
) -> Result<Outcome> {
    let report = Report {
        schema_version: SCHEMA_VERSION,
        kind: kind.to_string(),
        inputs,
        results,
        verification,
        timing: Timing { elapsed_ms: started.elapsed().as_secs_f64() * 1e3 },
    };
    let mut json = serde_json::to_string_pretty(&report).map_err(|e| Error::Parse(e.to_string()))?;
    json.push('\n');
    Ok(Outcome { json, summary, verified })
}

pub fn run_problem(problem: ProblemFile, o: &Overrides) -> Result<Outcome> {
    check_version(problem.schema_version())?;
    match problem {
        ProblemFile::Ode(x) => solve_ode(x, o),
        ProblemFile::Pde(x) => solve_pde(x, o),
        ProblemFile::Type(x) => type_cmd(x, o),
        ProblemFile::Ml(x) => ml_cmd(x, o),
        ProblemFile::FactorialBounds(x) => factorial_cmd(x, o),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerK {
    pub k: usize,
    /// `None` for `y_k = 0`.
    pub sigma_exp: Option<Exponent>,
    pub method: Option<TypeMethod>,
    pub threshold: Exponent,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionResults<T> {
    pub precision_used: u32,
    /// Certified: the series converges for `|z| < p^(-radius_threshold)`.
    pub radius_threshold: Exponent,
    pub per_k: Vec<PerK>,
    pub series: SeriesJson<T>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm_bound: Option<Exponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_to_degree: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidualSummary {
    pub pass: bool,
    pub recurrence_checked: usize,
    pub termwise_checked: usize,
    pub initial_checked: usize,
    /// `(n, k)` of every failing recurrence identity.
    pub failures: Vec<(usize, usize)>,
}

impl From<&ResidualReport> for ResidualSummary {
    fn from(r: &ResidualReport) -> Self {
        ResidualSummary {
            pass: r.pass,
            recurrence_checked: r.recurrence.len(),
            termwise_checked: r.termwise.len(),
            initial_checked: r.initial.len(),
            failures: r.failures(),
        }
    }
}

fn per_k<V: Carrier>(sol: &CauchySolution<V>) -> Vec<PerK> {
    sol.per_k_types
        .iter()
        .zip(&sol.per_k_thresholds)
        .enumerate()
        .map(|(k, (t, &tau))| PerK {
            k,
            sigma_exp: t.as_ref().map(|c| c.sigma_exp.into()),
            method: t.as_ref().map(|c| c.method),
            threshold: tau.into(),
        })
        .collect()
}

fn ode_problem(x: &OdeProblem, cap: u32) -> Result<CauchyProblem<PMatrix>> {
    let a = matrix_from_json(&x.matrix, x.p, cap)?;
    let ys = x.initial.iter().map(|y| vector_from_json(y, x.p, cap)).collect::<Result<Vec<_>>>()?;
    CauchyProblem::new(a, x.m, ys, x.truncation)
}

fn solve_ode(mut x: OdeProblem, o: &Overrides) -> Result<Outcome> {
    let started = Instant::now();
    x.p = o.p.unwrap_or(x.p);
    x.precision = o.precision.or(x.precision);
    x.truncation = o.truncation.unwrap_or(x.truncation);
    check_prime(x.p)?;
    let mut used = 0;
    let (problem, sol) = with_precision_retry(x.precision.unwrap_or(DEFAULT_PRECISION), |cap| {
        used = cap;
        let problem = ode_problem(&x, cap)?;
        let sol = solve_with(&problem, SolveOptions { threads: o.threads })?;
        Ok((problem, sol))
    })?;
    let residual = verify_residual(&sol, &problem)?;
    let summary = format!(
        "solve-ode: p = {}, m = {}, {} coefficients, radius threshold {} (r = p^-({})), residual {}",
        x.p,
        x.m,
        sol.series.truncation() + 1,
        sol.radius_threshold,
        sol.radius_threshold,
        if residual.pass { "pass" } else { "FAIL" }
    );
    let results = SolutionResults {
        precision_used: used,
        radius_threshold: sol.radius_threshold.into(),
        per_k: per_k(&sol),
        series: series_to_json(&sol.series, vector_to_json),
        norm_bound: None,
        exact_to_degree: None,
    };
    let verification = ResidualSummary::from(&residual);
    finish("ode-solution", Some(ProblemFile::Ode(x)), results, verification, started, summary, residual.pass)
}

fn build_pde(x: &PdeProblem, cap: u32) -> Result<CauchyProblem<DiffOp>> {
    let terms = x
        .operator
        .iter()
        .map(|t| Ok((t.beta.clone(), multiseries_from_json(&t.coeff, x.p, cap)?)))
        .collect::<Result<Vec<_>>>()?;
    let op = DiffOp::new(terms)?;
    let initial = x.initial.iter().map(|f| multiseries_from_json(f, x.p, cap)).collect::<Result<Vec<_>>>()?;
    pde_problem(x.m, &op, &initial, x.truncation, x.degree)
}

fn solve_pde(mut x: PdeProblem, o: &Overrides) -> Result<Outcome> {
    let started = Instant::now();
    x.p = o.p.unwrap_or(x.p);
    x.precision = o.precision.or(x.precision);
    x.truncation = o.truncation.unwrap_or(x.truncation);
    x.degree = o.degree.unwrap_or(x.degree);
    check_prime(x.p)?;
    let mut used = 0;
    let (problem, sol) = with_precision_retry(x.precision.unwrap_or(DEFAULT_PRECISION), |cap| {
        used = cap;
        let problem = build_pde(&x, cap)?;
        let sol = solve_with(&problem, SolveOptions { threads: o.threads })?;
        Ok((problem, sol))
    })?;
    let residual = verify_residual(&sol, &problem)?;
    let bound = diffop_norm_bound(&problem.operator);
    let summary = format!(
        "solve-pde: p = {}, m = {}, |A| <= p^({}), disk threshold {}, residual {}",
        x.p,
        x.m,
        bound,
        sol.radius_threshold,
        if residual.pass { "pass" } else { "FAIL" }
    );
    let results = SolutionResults {
        precision_used: used,
        radius_threshold: sol.radius_threshold.into(),
        per_k: per_k(&sol),
        series: series_to_json(&sol.series, multiseries_to_json),
        norm_bound: Some(bound.into()),
        exact_to_degree: Some(x.degree),
    };
    let verification = ResidualSummary::from(&residual);
    finish("pde-solution", Some(ProblemFile::Pde(x)), results, verification, started, summary, residual.pass)
}

#[derive(Debug, Serialize)]
struct EAlphaOut {
    alpha_exp: ExtRational,
    exponent: Exponent,
    certified: bool,
    argmax: usize,
}

#[derive(Debug, Serialize)]
struct TypeResults {
    precision_used: u32,
    sigma_exp: Exponent,
    method: TypeMethod,
    krylov_degree: usize,
    /// Lower bounds where a coefficient is uncertified; constant term first.
    minpoly_valuations: Vec<ExtRational>,
    /// Absent when cancellation left the small roots unresolved; the type
    /// then comes from the last hull edge alone.
    #[serde(skip_serializing_if = "Option::is_none")]
    newton_vertices: Option<Vec<(usize, ExtRational)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    root_valuations: Option<Vec<ExtRational>>,
    orbit_gamma: ExtRational,
    entire: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    empirical_estimate: Option<Exponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    e_alpha_norm: Option<EAlphaOut>,
}

fn type_cmd(mut x: TypeProblem, o: &Overrides) -> Result<Outcome> {
    let started = Instant::now();
    x.p = o.p.unwrap_or(x.p);
    x.precision = o.precision.or(x.precision);
    check_prime(x.p)?;
    let results = with_precision_retry(x.precision.unwrap_or(DEFAULT_PRECISION), |cap| {
        let a = matrix_from_json(&x.matrix, x.p, cap)?;
        let v = vector_from_json(&x.vector, x.p, cap)?;
        let cert = vector_type(&a, &v)?;
        let empirical_estimate = x.n_max.map(|n| orbit_growth_estimate(&a, &v, n)).transpose()?.map(Into::into);
        let e_alpha_norm = x
            .alpha_exp
            .map(|al| {
                e_alpha_norm(&a, &v, al).map(|r| EAlphaOut {
                    alpha_exp: al,
                    exponent: r.exponent.into(),
                    certified: r.certified,
                    argmax: r.argmax,
                })
            })
            .transpose()?;
        Ok(TypeResults {
            precision_used: cap,
            sigma_exp: cert.sigma_exp.into(),
            method: cert.method,
            krylov_degree: cert.krylov_degree,
            minpoly_valuations: cert.minpoly_valuations.clone(),
            newton_vertices: cert.polygon.as_ref().map(|g| g.vertices.clone()),
            root_valuations: cert.polygon.as_ref().map(|g| g.root_valuations()),
            orbit_gamma: cert.orbit_gamma,
            entire: entire_vector_check(&a, &v)?,
            empirical_estimate,
            e_alpha_norm,
        })
    })?;
    let summary = format!(
        "type: sigma_exp = {} (sigma = p^({})), Krylov degree {}",
        results.sigma_exp.exact, results.sigma_exp.exact, results.krylov_degree
    );
    finish("type-certificate", Some(ProblemFile::Type(x)), results, (), started, summary, true)
}

#[derive(Debug, Serialize)]
struct MlValue {
    z: ScalarJson,
    value: Vec<ScalarJson>,
    /// Valuation lower bound of the omitted tail.
    error_exponent: Exponent,
}

#[derive(Debug, Serialize)]
struct MlResults {
    precision_used: u32,
    sigma_exp: Option<Exponent>,
    radius_threshold: Exponent,
    series: SeriesJson<Vec<ScalarJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<MlValue>,
}

fn ml_cmd(mut x: MlProblem, o: &Overrides) -> Result<Outcome> {
    let started = Instant::now();
    x.p = o.p.unwrap_or(x.p);
    x.precision = o.precision.or(x.precision);
    x.truncation = o.truncation.unwrap_or(x.truncation);
    check_prime(x.p)?;
    let results = with_precision_retry(x.precision.unwrap_or(DEFAULT_PRECISION), |cap| {
        let a = matrix_from_json(&x.matrix, x.p, cap)?;
        let v = vector_from_json(&x.vector, x.p, cap)?;
        let spec = MLSpec::new(x.m, x.k, x.truncation)?;
        let ml = ml_series(&a, &v, &spec)?;
        let sigma = ml.orbit.as_ref().map(|o| o.sigma_exp);
        let tau = ml.series.tail().map_or(ExtRational::PosInf, |t| t.threshold());
        let value = match &x.z {
            Some(zj) => {
                let z = scalar_from_json(zj, x.p, cap)?;
                let val = series_eval(&ml.series, &z)?;
                Some(MlValue {
                    z: zj.clone(),
                    value: vector_to_json(&val.value),
                    error_exponent: val.error_exponent.into(),
                })
            }
            None => None,
        };
        Ok(MlResults {
            precision_used: cap,
            sigma_exp: sigma.map(Into::into),
            radius_threshold: tau.into(),
            series: series_to_json(&ml.series, vector_to_json),
            value,
        })
    })?;
    let summary = format!(
        "ml: F_{}(z; A)x with m = {}, radius threshold {}{}",
        x.k,
        x.m,
        results.radius_threshold.exact,
        if results.value.is_some() { ", evaluated" } else { "" }
    );
    finish("ml-series", Some(ProblemFile::Ml(x)), results, (), started, summary, true)
}

#[derive(Debug, Serialize)]
struct FactorialResults {
    p: u32,
    n_max: u64,
    /// Smallest `n0` with the sandwich holding for every `n0 ≤ n ≤ n_max`.
    observed_threshold: Option<u64>,
    rows: Vec<FactorialBounds>,
}

#[derive(Debug, Serialize)]
struct FactorialVerification {
    all_hold: bool,
    failures: Vec<u64>,
}

pub fn factorial_cmd(mut x: FactorialProblem, o: &Overrides) -> Result<Outcome> {
    let started = Instant::now();
    x.p = o.p.unwrap_or(x.p);
    check_prime(x.p)?;
    if x.n_max == 0 {
        return Err(Error::InvalidProblem("n_max must be at least 1".into()));
    }
    let rows: Vec<_> = (1..=x.n_max).map(|n| factorial_norm_bounds(n, x.p)).collect();
    let failures: Vec<u64> = rows.iter().filter(|r| !r.holds()).map(|r| r.n).collect();
    let observed_threshold = match failures.last() {
        None => Some(1),
        Some(&n) if n < x.n_max => Some(n + 1),
        Some(_) => None,
    };
    let all_hold = failures.is_empty();
    let summary = format!(
        "factorial-bounds: p = {}, n <= {}: {}",
        x.p,
        x.n_max,
        if all_hold { "every row holds".to_string() } else { format!("{} rows fail", failures.len()) }
    );
    let results = FactorialResults { p: x.p, n_max: x.n_max, observed_threshold, rows };
    let verification = FactorialVerification { all_hold, failures };
    finish("factorial-bounds", Some(ProblemFile::FactorialBounds(x)), results, verification, started, summary, all_hold)
}

#[derive(Debug, Deserialize)]
struct StoredReport {
    kind: String,
    inputs: Option<ProblemFile>,
    results: serde_json::Value,
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Re-checks a stored `solve-ode` or `solve-pde` report against its own
/// echoed problem.
pub fn verify_report(text: &str) -> Result<Outcome> {
    let started = Instant::now();
    let stored: StoredReport = serde_json::from_str(text).map_err(parse_err)?;
    let residual = match (stored.kind.as_str(), stored.inputs) {
        ("ode-solution", Some(ProblemFile::Ode(x))) => {
            let r: SolutionResults<Vec<ScalarJson>> = serde_json::from_value(stored.results).map_err(parse_err)?;
            let cap = r.precision_used;
            let problem = ode_problem(&x, cap)?;
            let series = series_from_json(&r.series, |c| vector_from_json(c, x.p, cap))?;
            residual_of(series, &problem)?
        }
        ("pde-solution", Some(ProblemFile::Pde(x))) => {
            let r: SolutionResults<MultiSeriesJson> = serde_json::from_value(stored.results).map_err(parse_err)?;
            let cap = r.precision_used;
            let problem = build_pde(&x, cap)?;
            let series = series_from_json(&r.series, |c| multiseries_from_json(c, x.p, cap))?;
            residual_of::<DiffOp>(series, &problem)?
        }
        (kind, _) => {
            return Err(Error::Parse(format!(
                "verify expects an ode-solution or pde-solution report with its inputs, got {kind:?}"
            )))
        }
    };
    let summary = format!(
        "verify: {} recurrence and {} termwise identities, {}",
        residual.recurrence.len(),
        residual.termwise.len(),
        if residual.pass { "all pass".to_string() } else { format!("failures at (n, k) = {:?}", residual.failures()) }
    );
    let pass = residual.pass;
    let verification = ResidualSummary::from(&residual);
    finish("residual-report", None, residual, verification, started, summary, pass)
}

fn residual_of<Op: padic_cauchy::LinearOperator>(
    series: padic_cauchy::series::BSeries<Op::Vector>,
    problem: &CauchyProblem<Op>,
) -> Result<ResidualReport> {
    let sol = CauchySolution {
        series,
        radius_threshold: ExtRational::PosInf,
        per_k_types: Vec::new(),
        per_k_thresholds: Vec::new(),
    };
    verify_residual(&sol, problem)
}
