//! Quadrature oracle for integrands of the form
//!
//! P(x)·ln x / ((x−1)^ε · Π(x+a)ᵖ · Π(x²+Lx+1)ᵖ)   on (0, ∞).
//!
//! The half-line is split at 1 and [1, ∞) is folded onto (0, 1] by x = 1/t
//! with the Jacobian and every factor rewritten in t analytically, so both
//! panels are finite with at worst a logarithmic singularity at 0. The factor
//! ln x/(x−1) is evaluated from its Taylor series within 1e−3 of x = 1.

mod tanh_sinh;

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{to_f64, Rational};
use tanh_sinh::{integrate_panel, Budget, PanelFailure, PanelResult, Tolerance};

/// Half-width of the series patch around x = 1.
pub const PATCH_RADIUS: f64 = 1e-3;
/// The ln x/(x−1) series stops once a term drops below this.
pub const SERIES_CUTOFF: f64 = 1e-18;
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;
/// Smallest relative tolerance the oracle accepts.
pub const MIN_REL_TOL: f64 = 1e-13;
pub const BUDGET_ENV_VAR: &str = "LOGINT_SEED_BUDGET";

#[derive(Debug, Clone, PartialEq)]
pub struct LogIntegrand {
    /// Coefficient of xⁱ at index i.
    pub numerator: Vec<Rational>,
    pub has_xminus1_factor: bool,
    /// (a, p) for (x + a)ᵖ
    pub linear_factors: Vec<(f64, u32)>,
    /// (L, p) for (x² + Lx + 1)ᵖ
    pub quadratic_factors: Vec<(f64, u32)>,
}

impl LogIntegrand {
    pub fn new(
        numerator: Vec<Rational>,
        has_xminus1_factor: bool,
        linear_factors: Vec<(f64, u32)>,
        quadratic_factors: Vec<(f64, u32)>,
    ) -> Result<Self> {
        let mut numerator = numerator;
        while numerator.last().is_some_and(|c| c.is_zero()) {
            numerator.pop();
        }
        let f = LogIntegrand {
            numerator,
            has_xminus1_factor,
            linear_factors,
            quadratic_factors,
        };
        f.validate()?;
        Ok(f)
    }

    /// xᵐ ln x / ((x−1)(x+a)^{k+m+1})
    pub fn family(m: u32, k: u32, a: f64) -> Result<Self> {
        let mut numerator = vec![Rational::zero(); m as usize + 1];
        numerator[m as usize] = crate::exact::int(1);
        LogIntegrand::new(numerator, true, vec![(a, k + m + 1)], vec![])
    }

    /// Degree of the numerator, `None` for the zero polynomial.
    pub fn numerator_degree(&self) -> Option<usize> {
        self.numerator.iter().rposition(|c| !c.is_zero())
    }

    pub fn denominator_degree(&self) -> u32 {
        let linear: u32 = self.linear_factors.iter().map(|(_, p)| p).sum();
        let quadratic: u32 = self.quadratic_factors.iter().map(|(_, p)| 2 * p).sum();
        u32::from(self.has_xminus1_factor) + linear + quadratic
    }

    pub fn is_zero(&self) -> bool {
        self.numerator_degree().is_none()
    }

    pub fn validate(&self) -> Result<()> {
        for &(a, p) in &self.linear_factors {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Error::NotIntegrable(format!("linear factor (x + {a}) needs a > 0")));
            }
            if p == 0 {
                return Err(Error::NotIntegrable("factor with zero power".into()));
            }
        }
        for &(l, p) in &self.quadratic_factors {
            if !(l > -2.0 && l.is_finite()) {
                return Err(Error::NotIntegrable(format!(
                    "quadratic factor (x^2 + {l}x + 1) vanishes on the positive axis"
                )));
            }
            if p == 0 {
                return Err(Error::NotIntegrable("factor with zero power".into()));
            }
        }
        if let Some(d) = self.numerator_degree() {
            if (self.denominator_degree() as usize) < d + 2 {
                return Err(Error::NotIntegrable(format!(
                    "denominator degree {} must exceed numerator degree {} by at least 2",
                    self.denominator_degree(),
                    d
                )));
            }
        }
        Ok(())
    }

    fn prepare(&self) -> Prepared {
        let degree = self.numerator_degree().unwrap_or(0);
        let coeffs: Vec<f64> = self.numerator[..=degree.min(self.numerator.len().saturating_sub(1))]
            .iter()
            .map(to_f64)
            .collect();
        let gap = self.denominator_degree() as i32 - degree as i32 - 2;
        Prepared {
            coeffs,
            has_xminus1: self.has_xminus1_factor,
            linear: self.linear_factors.clone(),
            quadratic: self.quadratic_factors.clone(),
            gap,
        }
    }
}

fn poly_str(coeffs: &[Rational]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coeff = if mag.is_integer() {
            mag.numer().to_string()
        } else {
            format!("({}/{})", mag.numer(), mag.denom())
        };
        let body = match (i, coeff.as_str()) {
            (0, _) => coeff,
            (1, "1") => "x".to_string(),
            (1, _) => format!("{coeff}*x"),
            (_, "1") => format!("x^{i}"),
            _ => format!("{coeff}*x^{i}"),
        };
        parts.push((c.is_negative(), body));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (j, (neg, body)) in parts.into_iter().enumerate() {
        match (j, neg) {
            (0, true) => out.push_str(&format!("-{body}")),
            (0, false) => out.push_str(&body),
            (_, true) => out.push_str(&format!(" - {body}")),
            (_, false) => out.push_str(&format!(" + {body}")),
        }
    }
    out
}

/// e.g. `(3 + 2*x)*ln(x)/((x-1)*(x^2+3*x+1))`
impl fmt::Display for LogIntegrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if self.has_xminus1_factor {
            factors.push("(x-1)".to_string());
        }
        let pow = |base: String, p: u32| if p == 1 { base } else { format!("{base}^{p}") };
        for &(a, p) in &self.linear_factors {
            factors.push(pow(format!("(x+{a})"), p));
        }
        for &(l, p) in &self.quadratic_factors {
            factors.push(pow(format!("(x^2+{l}*x+1)"), p));
        }
        let denom = match factors.len() {
            0 => "1".to_string(),
            1 => factors.remove(0),
            _ => format!("({})", factors.join("*")),
        };
        write!(f, "({})*ln(x)/{}", poly_str(&self.numerator), denom)
    }
}

struct Prepared {
    coeffs: Vec<f64>,
    has_xminus1: bool,
    linear: Vec<(f64, u32)>,
    quadratic: Vec<(f64, u32)>,
    gap: i32,
}

impl Prepared {
    // f(x) on (0, 1]
    fn head(&self, x: f64) -> f64 {
        let p = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let log = if self.has_xminus1 { ln_ratio(x) } else { x.ln() };
        let mut denom = 1.0;
        for &(a, pw) in &self.linear {
            denom *= (x + a).powi(pw as i32);
        }
        for &(l, pw) in &self.quadratic {
            denom *= (x * x + l * x + 1.0).powi(pw as i32);
        }
        p * log / denom
    }

    // f(1/t)/t² on (0, 1]
    fn tail(&self, t: f64) -> f64 {
        // numerator reversed: t^d · P(1/t)
        let r = self.coeffs.iter().fold(0.0, |acc, c| acc * t + c);
        let log = if self.has_xminus1 { ln_ratio(t) } else { -t.ln() };
        let mut denom = 1.0;
        for &(a, pw) in &self.linear {
            denom *= (1.0 + a * t).powi(pw as i32);
        }
        for &(l, pw) in &self.quadratic {
            denom *= (t * t + l * t + 1.0).powi(pw as i32);
        }
        r * log * t.powi(self.gap) / denom
    }
}

/// ln x/(x − 1), continuous through x = 1.
pub fn ln_ratio(x: f64) -> f64 {
    let u = x - 1.0;
    if u.abs() < PATCH_RADIUS {
        ln_ratio_series(u)
    } else {
        ln_ratio_direct(x)
    }
}

/// Σ (−u)ⁿ/(n+1), the expansion of ln(1+u)/u.
pub fn ln_ratio_series(u: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = 1.0;
    let mut n = 0u32;
    loop {
        let term = power / f64::from(n + 1);
        if term.abs() < SERIES_CUTOFF {
            break;
        }
        sum += term;
        power *= -u;
        n += 1;
    }
    sum
}

pub fn ln_ratio_direct(x: f64) -> f64 {
    if (0.5..=2.0).contains(&x) {
        let u = x - 1.0;
        u.ln_1p() / u
    } else {
        x.ln() / (x - 1.0)
    }
}

/// Pointwise value of the integrand.
pub fn evaluate_integrand(f: &LogIntegrand, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    Ok(f.prepare().head(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    /// ∫|f|; the scale the relative tolerance is measured against.
    pub l1_norm: f64,
    pub function_evaluations: usize,
    pub subdivisions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub node_budget: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            rel_tol: MIN_REL_TOL,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl QuadratureOptions {
    pub fn with_tolerance(rel_tol: f64) -> Self {
        QuadratureOptions {
            rel_tol,
            ..QuadratureOptions::default()
        }
    }

    /// Default options with the node budget taken from `LOGINT_SEED_BUDGET`
    /// when it is set to a positive integer.
    pub fn from_env() -> Self {
        let budget = std::env::var(BUDGET_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&b| b > 0)
            .unwrap_or(DEFAULT_NODE_BUDGET);
        QuadratureOptions {
            node_budget: budget,
            ..QuadratureOptions::default()
        }
    }
}

/// Integrates over (0, ∞) to `target_rel_tol` with the default node budget
/// (overridable through `LOGINT_SEED_BUDGET`).
pub fn integrate(f: &LogIntegrand, target_rel_tol: f64) -> Result<QuadratureResult> {
    let options = QuadratureOptions {
        rel_tol: target_rel_tol,
        ..QuadratureOptions::from_env()
    };
    integrate_with(f, &options)
}

/// The estimated error is bounded by `rel_tol · ∫|f|`; for integrands of one
/// sign this is the relative error of the value.
pub fn integrate_with(f: &LogIntegrand, options: &QuadratureOptions) -> Result<QuadratureResult> {
    if !(options.rel_tol >= MIN_REL_TOL) || !options.rel_tol.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "target relative tolerance must be finite and at least {MIN_REL_TOL:e}"
        )));
    }
    f.validate()?;
    if f.is_zero() {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            l1_norm: 0.0,
            function_evaluations: 0,
            subdivisions: 0,
        });
    }
    let prepared = f.prepare();
    let mut budget = Budget {
        remaining: options.node_budget,
    };
    let tol = Tolerance::Relative(options.rel_tol);
    let head = integrate_panel(&|x| prepared.head(x), 0.0, 1.0, tol, &mut budget)
        .map_err(|e| failure(e, PanelResult::default()))?;
    let tail = integrate_panel(&|t| prepared.tail(t), 0.0, 1.0, tol, &mut budget)
        .map_err(|e| failure(e, head))?;
    Ok(QuadratureResult {
        value: head.value + tail.value,
        abs_error_estimate: head.error + tail.error,
        l1_norm: head.l1 + tail.l1,
        function_evaluations: head.evaluations + tail.evaluations,
        subdivisions: head.subdivisions + tail.subdivisions,
    })
}

fn failure(e: PanelFailure, done: PanelResult) -> Error {
    match e {
        PanelFailure::Budget(p) | PanelFailure::Depth(p) => Error::NoConvergence {
            estimate: done.value + p.value,
            error_estimate: p.error,
            evaluations: done.evaluations + p.evaluations,
        },
        PanelFailure::NonFinite(x) => {
            Error::NotIntegrable(format!("non-finite integrand value near x = {x:e}"))
        }
    }
}
