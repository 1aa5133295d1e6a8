//! Identity catalog, grid runner and verification report.

mod catalog;
mod table;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed::{compare_forms, errors, within_tolerance, EqualityLevel, PROBE_POINTS};
use crate::error::{Error, Result};
use crate::exact::{to_f64, GoldenValue, Rational};
use crate::logpoly::{lemma_derivative_rational, lemma_finite_difference, LogPolyExpr};
use crate::quad::{integrate_with, LogIntegrand, QuadratureOptions, MIN_REL_TOL};

pub use catalog::{catalog, IdentityEntry};
pub use table::{build_table, TableFamily, TableRanges, TableRow};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const MAX_TOLERANCE: f64 = 1e-3;
/// Finite differences cannot resolve better than this.
pub const FINITE_DIFFERENCE_TOLERANCE: f64 = 1e-5;
/// Quadrature tolerance floor for the Fibonacci families.
pub const FIB_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Fib,
    Lemmas,
    General,
    All,
}

impl Suite {
    pub const NAMED: [Suite; 4] = [Suite::Core, Suite::Fib, Suite::Lemmas, Suite::General];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Fib => "fib",
            Suite::Lemmas => "lemmas",
            Suite::General => "general",
            Suite::All => "all",
        }
    }

    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        [Suite::Core, Suite::Fib, Suite::Lemmas, Suite::General, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite {s:?}")))
    }
}

/// Parameter grid. Every field has a default, so a config file only needs
/// the keys it changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub a: Vec<f64>,
    pub m_max: u32,
    pub k_max: u32,
    pub r: Vec<u32>,
    /// Largest k (or m) for the Fibonacci quadrature checks.
    pub fib_n_max: u32,
    /// Largest k for the exact re-derivation of the square families.
    pub fib_rederive_max: u32,
    pub ln_power_k_max: u32,
    pub binomial_m_max: u32,
    pub binomial_k_max: u32,
    pub geometric_k_max: u32,
    pub derivative_k_max: u32,
    pub lemma_samples: usize,
    pub seed: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            a: vec![0.25, 0.5, 1.0, 1.618034, 3.0, 10.0],
            m_max: 4,
            k_max: 6,
            r: vec![2, 4],
            fib_n_max: 3,
            fib_rederive_max: 6,
            ln_power_k_max: 8,
            binomial_m_max: 5,
            binomial_k_max: 5,
            geometric_k_max: 5,
            derivative_k_max: 12,
            lemma_samples: 30,
            seed: 20_240_601,
        }
    }
}

impl GridConfig {
    pub fn validate(&self) -> Result<()> {
        if self.a.is_empty() {
            return Err(Error::InvalidParameter("grid needs at least one value of a".into()));
        }
        if let Some(&a) = self.a.iter().find(|&&a| !(a > 0.0 && a.is_finite())) {
            return Err(Error::NonPositiveArgument(a));
        }
        if let Some(&r) = self.r.iter().find(|&&r| r < 2 || r % 2 != 0) {
            return Err(Error::InvalidParameter(format!("r must be even and at least 2, got {r}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Int(i64),
    Real(f64),
    Text(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Real(v) => write!(f, "{v}"),
            ParamValue::Text(v) => f.write_str(v),
        }
    }
}

pub type Parameters = BTreeMap<String, ParamValue>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LhsSource {
    Quadrature,
    ExactExpression,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RhsSource {
    ExactExpression,
    GoldenValue,
    FiniteDifference,
}

/// One planned comparison.
#[derive(Debug, Clone)]
pub struct IdentityCase {
    pub identity_id: &'static str,
    pub parameters: Parameters,
    pub lhs_source: LhsSource,
    pub rhs_source: RhsSource,
    pub(crate) check: Check,
}

#[derive(Debug, Clone)]
pub(crate) enum Rhs {
    Expr(LogPolyExpr, f64),
    Real(f64),
    Golden(GoldenValue),
}

#[derive(Debug, Clone)]
pub(crate) enum Check {
    Quadrature { integrand: LogIntegrand, rhs: Rhs, floor: f64 },
    Forms { lhs: LogPolyExpr, rhs: LogPolyExpr },
    Golden { lhs: GoldenValue, rhs: GoldenValue },
    Integer { lhs: BigInt, rhs: BigInt },
    Lemma { c: Rational, s: u32, x: Rational, k: u32, a: Rational },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub identity_id: String,
    pub parameters: Parameters,
    pub lhs_source: LhsSource,
    pub rhs_source: RhsSource,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub equality_level: EqualityLevel,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub suite: Suite,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub by_level: BTreeMap<EqualityLevel, usize>,
    pub tolerance: f64,
    pub tool_version: String,
    pub node_budget: usize,
}

/// The only part of a report that varies between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub started_unix_seconds: u64,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub summary: Summary,
    pub cases: Vec<CaseReport>,
    pub timing: Timing,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseReport> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

/// Expands every catalog entry in `suite` over `grid`, in catalog order.
pub fn plan_suite(suite: Suite, grid: &GridConfig) -> Result<Vec<IdentityCase>> {
    grid.validate()?;
    let mut cases = Vec::new();
    for entry in catalog() {
        if suite.includes(entry.suite) {
            cases.extend((entry.expand)(grid)?);
        }
    }
    Ok(cases)
}

pub fn run_suite(suite: Suite, tolerance: f64, grid: &GridConfig) -> Result<VerificationReport> {
    run_suite_with(suite, tolerance, grid, &QuadratureOptions::from_env())
}

pub fn run_suite_with(
    suite: Suite,
    tolerance: f64,
    grid: &GridConfig,
    quadrature: &QuadratureOptions,
) -> Result<VerificationReport> {
    if !(MIN_REL_TOL..=MAX_TOLERANCE).contains(&tolerance) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must lie in [{MIN_REL_TOL:e}, {MAX_TOLERANCE:e}]"
        )));
    }
    let started = Instant::now();
    let started_unix_seconds = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let planned = plan_suite(suite, grid)?;
    let options = QuadratureOptions {
        rel_tol: (tolerance * 1e-3).clamp(MIN_REL_TOL, 1e-11),
        node_budget: quadrature.node_budget,
    };
    let cases: Vec<CaseReport> = planned
        .par_iter()
        .map(|case| run_case(case, tolerance, &options))
        .collect();
    let passed = cases.iter().filter(|c| c.pass).count();
    let mut by_level = BTreeMap::new();
    for c in &cases {
        *by_level.entry(c.equality_level).or_insert(0) += 1;
    }
    Ok(VerificationReport {
        summary: Summary {
            suite,
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
            by_level,
            tolerance,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            node_budget: options.node_budget,
        },
        cases,
        timing: Timing {
            started_unix_seconds,
            wall_time_seconds: started.elapsed().as_secs_f64(),
        },
    })
}

struct Outcome {
    lhs: Option<f64>,
    rhs: Option<f64>,
    abs_err: Option<f64>,
    rel_err: Option<f64>,
    tolerance: f64,
    pass: bool,
    level: EqualityLevel,
    reason: Option<String>,
}

impl Outcome {
    fn compared(lhs: f64, rhs: f64, tolerance: f64, level: EqualityLevel) -> Outcome {
        let (abs, rel) = errors(lhs, rhs);
        Outcome {
            lhs: Some(lhs),
            rhs: Some(rhs),
            abs_err: Some(abs),
            rel_err: Some(rel),
            tolerance,
            pass: within_tolerance(lhs, rhs, tolerance),
            level,
            reason: None,
        }
    }

    fn failed(level: EqualityLevel, tolerance: f64, reason: String) -> Outcome {
        Outcome {
            lhs: None,
            rhs: None,
            abs_err: None,
            rel_err: None,
            tolerance,
            pass: false,
            level,
            reason: Some(reason),
        }
    }
}

fn run_case(case: &IdentityCase, tolerance: f64, options: &QuadratureOptions) -> CaseReport {
    let o = evaluate_check(&case.check, tolerance, options);
    CaseReport {
        identity_id: case.identity_id.to_string(),
        parameters: case.parameters.clone(),
        lhs_source: case.lhs_source,
        rhs_source: case.rhs_source,
        lhs: o.lhs,
        rhs: o.rhs,
        abs_err: o.abs_err,
        rel_err: o.rel_err,
        tolerance: o.tolerance,
        pass: o.pass,
        equality_level: o.level,
        reason: o.reason,
    }
}

fn evaluate_check(check: &Check, tolerance: f64, options: &QuadratureOptions) -> Outcome {
    match check {
        Check::Quadrature { integrand, rhs, floor } => {
            let tol = tolerance.max(*floor);
            let level = EqualityLevel::Quadrature;
            let rhs = match rhs {
                Rhs::Expr(e, a) => e.evaluate(*a),
                Rhs::Real(v) => Ok(*v),
                Rhs::Golden(g) => Ok(g.to_f64()),
            };
            let rhs = match rhs {
                Ok(v) => v,
                Err(e) => return Outcome::failed(level, tol, format!("right-hand side: {e}")),
            };
            match integrate_with(integrand, options) {
                Ok(q) => Outcome::compared(q.value, rhs, tol, level),
                Err(e @ Error::NoConvergence { estimate, .. }) => {
                    let mut o = Outcome::compared(estimate, rhs, tol, level);
                    o.pass = false;
                    o.reason = Some(format!("oracle did not converge: {e}"));
                    o
                }
                Err(e) => {
                    let mut o = Outcome::failed(level, tol, format!("oracle: {e}"));
                    o.rhs = Some(rhs);
                    o
                }
            }
        }
        Check::Forms { lhs, rhs } => {
            let tol = crate::closed::NUMERICAL_TOLERANCE;
            match compare_forms(lhs, rhs) {
                Ok(cmp) => {
                    let probe = PROBE_POINTS[2];
                    let l = lhs.evaluate(probe).unwrap_or(f64::NAN);
                    let r = rhs.evaluate(probe).unwrap_or(f64::NAN);
                    Outcome {
                        lhs: Some(l).filter(|v| v.is_finite()),
                        rhs: Some(r).filter(|v| v.is_finite()),
                        abs_err: Some(cmp.max_abs_err),
                        rel_err: Some(cmp.max_rel_err),
                        tolerance: tol,
                        pass: cmp.agrees(),
                        level: cmp.level.unwrap_or(EqualityLevel::Numerical),
                        reason: None,
                    }
                }
                Err(e) => Outcome::failed(EqualityLevel::Numerical, tol, e.to_string()),
            }
        }
        Check::Golden { lhs, rhs } => exact_outcome(lhs == rhs, lhs.to_f64(), rhs.to_f64()),
        Check::Integer { lhs, rhs } => exact_outcome(
            lhs == rhs,
            to_f64(&Rational::from_integer(lhs.clone())),
            to_f64(&Rational::from_integer(rhs.clone())),
        ),
        Check::Lemma { c, s, x, k, a } => {
            let tol = tolerance.max(FINITE_DIFFERENCE_TOLERANCE);
            let level = EqualityLevel::Numerical;
            let closed = lemma_derivative_rational(c, *s, x, *k, a);
            let fd = lemma_finite_difference(c, *s, x, *k, a);
            match (closed, fd) {
                (Ok(l), Ok(r)) => Outcome::compared(to_f64(&l), to_f64(&r), tol, level),
                (Err(e), _) | (_, Err(e)) => Outcome::failed(level, tol, e.to_string()),
            }
        }
    }
}

fn exact_outcome(equal: bool, lhs: f64, rhs: f64) -> Outcome {
    let (abs, rel) = errors(lhs, rhs);
    Outcome {
        lhs: Some(lhs),
        rhs: Some(rhs),
        abs_err: Some(abs),
        rel_err: Some(rel),
        tolerance: 0.0,
        pass: equal,
        level: EqualityLevel::Structural,
        reason: (!equal).then(|| "exact values differ".to_string()),
    }
}
