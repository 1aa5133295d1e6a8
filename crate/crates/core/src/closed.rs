//! Exact right-hand sides for F(m,k,a) = ∫₀^∞ xᵐ ln x/((x−1)(x+a)^{k+m+1}) dx
//! and the auxiliary integrals around it. Every builder returns a
//! [`LogPolyExpr`] in the variable a.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::constants::ALPHA;
use crate::error::{Error, Result};
use crate::exact::{big, binomial, factorial, from_f64, harmonic, int, rat, Rational};
use crate::logpoly::LogPolyExpr;
use crate::quad::LogIntegrand;

/// Points at which two expressions are compared when their canonical forms
/// differ.
pub const PROBE_POINTS: [f64; 4] = [0.3, 1.0, ALPHA, 4.0];
pub const NUMERICAL_TOLERANCE: f64 = 1e-12;
/// Below this |rhs| a comparison switches to absolute error.
pub const NEAR_ZERO: f64 = 1e-14;
pub const NEAR_ZERO_ABS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntegralSpec {
    pub m: u32,
    pub k: u32,
}

impl IntegralSpec {
    pub fn new(m: u32, k: u32) -> Self {
        IntegralSpec { m, k }
    }

    pub fn denominator_power(&self) -> u32 {
        self.k + self.m + 1
    }

    pub fn integrand(&self, a: f64) -> Result<LogIntegrand> {
        LogIntegrand::family(self.m, self.k, a)
    }

    pub fn closed_form(&self) -> LogPolyExpr {
        closed_F_general(self.m, self.k)
    }
}

impl fmt::Display for IntegralSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({},{},a)", self.m, self.k)
    }
}

fn ln() -> LogPolyExpr {
    LogPolyExpr::ln_pow(1)
}

/// π² + ln²a
fn pi2_ln2() -> LogPolyExpr {
    LogPolyExpr::pi_squared() + LogPolyExpr::ln_pow(2)
}

fn a(e: i64) -> LogPolyExpr {
    LogPolyExpr::a_pow(e as i32)
}

fn a1(e: i64) -> LogPolyExpr {
    LogPolyExpr::a1_pow(e as i32)
}

fn h(n: i64) -> LogPolyExpr {
    LogPolyExpr::rational(harmonic(n as u64))
}

fn c(value: Rational) -> LogPolyExpr {
    LogPolyExpr::rational(value)
}

fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Rational {
    Rational::new(n.into(), d.into())
}

/// (π² + ln²a)/(2(a+1))
pub fn base_integral() -> LogPolyExpr {
    pi2_ln2().scale(&rat(1, 2)) * a1(-1)
}

/// F(0,k,a).
#[allow(non_snake_case)]
pub fn closed_F0(k: u32) -> LogPolyExpr {
    let k = i64::from(k);
    let head = pi2_ln2().scale(&rat(1, 2)) * a1(-(k + 1));
    let tail: LogPolyExpr = (0..k)
        .map(|j| (h(j) - ln()).scale(&rat(1, j + 1)) * (a(-(j + 1)) * a1(j - k)))
        .sum();
    head + tail
}

/// F(1,k,a).
#[allow(non_snake_case)]
pub fn closed_F1(k: u32) -> LogPolyExpr {
    let k = i64::from(k);
    let head = pi2_ln2().scale(&rat(1, 2)) * a1(-(k + 2));
    let log_term = ln().scale(&rat(1, k + 1)) * a1(-(k + 1));
    let inner: LogPolyExpr = (0..k)
        .map(|j| {
            let bracket = (h(j) - ln()).scale_int(k - j) * a1(-1) - LogPolyExpr::one();
            bracket.scale(&rat(1, j + 1)) * a1(j + 1) * a(-(j + 1))
        })
        .sum();
    head + log_term + inner.scale(&rat(1, k + 1)) * a1(-(k + 1))
}

/// F(2,k,a).
#[allow(non_snake_case)]
pub fn closed_F2(k: u32) -> LogPolyExpr {
    let k = i64::from(k);
    let head = pi2_ln2().scale(&rat(1, 2)) * a1(-(k + 3));
    let inner: LogPolyExpr = (0..k)
        .map(|j| {
            let bracket = (h(j) - ln()).scale_int((k - j) * (k + 1 - j)) * a1(-1)
                - a(1)
                - LogPolyExpr::integer(1 + 2 * (k - j));
            bracket.scale(&rat(1, j + 1)) * a1(j) * a(-j)
        })
        .sum();
    let bracket = (a(1) + LogPolyExpr::integer(3 + 2 * k)) * a1(-1) * ln()
        + LogPolyExpr::one()
        + a(-1) * inner;
    head + bracket.scale(&rat(1, (k + 1) * (k + 2))) * a1(-(k + 1))
}

/// dᵏ/daᵏ (π² + ln²a) = 2(−1)ᵏ(k−1)! a⁻ᵏ (H_{k−1} − ln a), k ≥ 1.
pub fn dk_pi2_ln2(k: u32) -> Result<LogPolyExpr> {
    if k == 0 {
        return Err(Error::InvalidParameter("the derivative formula needs k >= 1".into()));
    }
    let k = i64::from(k);
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let scale = big(factorial((k - 1) as u64) * BigInt::from(2 * sign));
    Ok((h(k - 1) - ln()).scale(&scale) * a(-k))
}

/// F(m,k,a) for arbitrary m, k with the m-fold derivative blocks taken in b
/// and evaluated at b = 1/a.
#[allow(non_snake_case)]
pub fn closed_F_general(m: u32, k: u32) -> LogPolyExpr {
    let (m, k) = (i64::from(m), i64::from(k));
    let sign = if m % 2 == 0 { 1 } else { -1 };
    let weight = ratio(sign, factorial(m as u64) * binomial(k + m, m));
    let outer = a(-(k + m + 1));

    let head = LogPolyExpr::pi_squared().scale(&rat(1, 2)) * a1(-(k + m + 1));
    let square_block = (LogPolyExpr::ln_pow(2) * a1(-(k + 1)))
        .differentiate(m as u32)
        .substitute_reciprocal()
        .scale(&(weight.clone() * rat(1, 2)));
    let harmonic_sum: LogPolyExpr = (0..k)
        .map(|j| {
            let w = ratio(binomial(j + m, m), binomial(k + m, m)) * harmonic((k - j - 1) as u64)
                * rat(1, k - j);
            c(w) * a(j - k) * a1(-(j + m + 1))
        })
        .sum();
    let log_block: LogPolyExpr = (0..k)
        .map(|j| {
            (ln() * a1(-(j + 1)))
                .differentiate(m as u32)
                .substitute_reciprocal()
                .scale(&rat(1, k - j))
        })
        .sum();
    head + (square_block + log_block.scale(&weight)) * outer + harmonic_sum
}

/// F(m,k,a) with the k-fold derivative blocks taken directly in a.
#[allow(non_snake_case)]
pub fn closed_F_general_alt(m: u32, k: u32) -> LogPolyExpr {
    let (m, k) = (i64::from(m), i64::from(k));
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let weight = ratio(sign, factorial(k as u64) * binomial(k + m, m));

    let head = LogPolyExpr::pi_squared().scale(&rat(1, 2)) * a1(-(k + m + 1));
    let square_block = (LogPolyExpr::ln_pow(2) * a1(-(m + 1)))
        .differentiate(k as u32)
        .scale(&(weight.clone() * rat(1, 2)));
    let harmonic_sum: LogPolyExpr = (0..m)
        .map(|j| {
            let w = ratio(binomial(k + j, j), binomial(k + m, m)) * harmonic((m - j - 1) as u64)
                * rat(1, m - j);
            c(w) * a1(-(j + k + 1))
        })
        .sum();
    let log_block: LogPolyExpr = (0..m)
        .map(|j| (ln() * a1(-(j + 1))).differentiate(k as u32).scale(&rat(1, m - j)))
        .sum();
    head + square_block + log_block.scale(&weight) + harmonic_sum
}

/// F(m,0,a) in its simplified form:
/// (a+1)^{−(m+1)}[π²+ln²a + 2Σ_{j<m}(a+1)^{j+1}(H_j+ln a)/(j+1)]/2.
#[allow(non_snake_case)]
pub fn closed_Fm0(m: u32) -> LogPolyExpr {
    let m = i64::from(m);
    let head = pi2_ln2().scale(&rat(1, 2)) * a1(-(m + 1));
    let tail: LogPolyExpr = (0..m)
        .map(|j| (h(j) + ln()).scale(&rat(1, j + 1)) * a1(j - m))
        .sum();
    head + tail
}

/// ∫₀^∞ ln x/((x−1)(ax+1)^{k+1}) dx
/// = (π²+ln²a)/(2(a+1)^{k+1}) + Σ_{j<k}(H_{k−j−1}+ln a)/((k−j)(a+1)^{j+1}).
pub fn reciprocal_helper(k: u32) -> LogPolyExpr {
    let k = i64::from(k);
    let head = pi2_ln2().scale(&rat(1, 2)) * a1(-(k + 1));
    let tail: LogPolyExpr = (0..k)
        .map(|j| (h(k - j - 1) + ln()).scale(&rat(1, k - j)) * a1(-(j + 1)))
        .sum();
    head + tail
}

pub fn reciprocal_helper_integrand(k: u32, a: f64) -> Result<LogIntegrand> {
    let a_exact = exact_parameter(a)?;
    let scale = num_traits::Pow::pow(a_exact.recip(), k + 1);
    LogIntegrand::new(vec![scale], true, vec![(1.0 / a, k + 1)], vec![])
}

/// ∫₀^∞ ln x/(x+a)^{k+1} dx = (ln a − H_{k−1})/(k aᵏ), k ≥ 1.
pub fn ln_power_integral(k: u32) -> Result<LogPolyExpr> {
    if k == 0 {
        return Err(Error::InvalidParameter("ln x/(x+a) is not integrable at infinity".into()));
    }
    let k = i64::from(k);
    Ok((ln() - h(k - 1)).scale(&rat(1, k)) * a(-k))
}

pub fn ln_power_integrand(k: u32, a: f64) -> Result<LogIntegrand> {
    if k == 0 {
        return Err(Error::InvalidParameter("ln x/(x+a) is not integrable at infinity".into()));
    }
    LogIntegrand::new(vec![int(1)], false, vec![(a, k + 1)], vec![])
}

/// Integrand x^{k−1} ln x (x·C(m+k−2,m−2) − a·C(m+k−2,m−1))/(x+a)^{k+m} and
/// its value 1/((m−1)k a^{m−1}).
pub fn binom_weighted_identity(m: u32, k: u32, a: f64) -> Result<(LogIntegrand, f64)> {
    if m < 2 || k < 1 {
        return Err(Error::InvalidParameter("needs m >= 2 and k >= 1".into()));
    }
    let a_exact = exact_parameter(a)?;
    let (mi, ki) = (i64::from(m), i64::from(k));
    let mut numerator = vec![int(0); k as usize + 1];
    numerator[k as usize - 1] = -a_exact * big(binomial(mi + ki - 2, mi - 1));
    numerator[k as usize] = big(binomial(mi + ki - 2, mi - 2));
    let integrand = LogIntegrand::new(numerator, false, vec![(a, k + m)], vec![])?;
    let rhs = binom_weighted_rhs(m, k)?.evaluate(a)?;
    Ok((integrand, rhs))
}

/// 1/((m−1)k a^{m−1})
pub fn binom_weighted_rhs(m: u32, k: u32) -> Result<LogPolyExpr> {
    if m < 2 || k < 1 {
        return Err(Error::InvalidParameter("needs m >= 2 and k >= 1".into()));
    }
    let (m, k) = (i64::from(m), i64::from(k));
    Ok(c(rat(1, (m - 1) * k)) * a(-(m - 1)))
}

/// Right-hand sides for ∫(xᵏ ∓ 1) ln x/((x−1)(x+a)^{k+1}) dx, returned as
/// (minus, plus).
pub fn geometric_numerator_identity(k: u32) -> Result<(LogPolyExpr, LogPolyExpr)> {
    if k == 0 {
        return Err(Error::InvalidParameter("needs k >= 1".into()));
    }
    let k = i64::from(k);
    let one = LogPolyExpr::one();
    let term = |j: i64, hw: &LogPolyExpr, lw: &LogPolyExpr| {
        let bracket = hw.clone() * h(j) + lw.clone() * ln();
        bracket.scale(&rat(1, j + 1)) * a1(j + 1) * a(-(j + 1))
    };
    let minus: LogPolyExpr = (0..k)
        .map(|j| term(j, &(a(j + 1) - one.clone()), &(a(j + 1) + one.clone())))
        .sum();
    let plus: LogPolyExpr = (0..k)
        .map(|j| term(j, &(a(j + 1) + one.clone()), &(a(j + 1) - one.clone())))
        .sum();
    let minus = minus * a1(-(k + 1));
    let plus = (pi2_ln2() + plus) * a1(-(k + 1));
    Ok((minus, plus))
}

/// (xᵏ + sign) ln x/((x−1)(x+a)^{k+1}) with sign = ±1.
pub fn geometric_integrand(k: u32, a: f64, sign: i64) -> Result<LogIntegrand> {
    let mut numerator = vec![int(0); k as usize + 1];
    numerator[0] = int(sign);
    numerator[k as usize] += int(1);
    LogIntegrand::new(numerator, true, vec![(a, k + 1)], vec![])
}

/// ln x·Σ_{j<k} xʲ/(x+a)^{k+1}, the minus case with (x−1) cancelled.
pub fn partial_sum_integrand(k: u32, a: f64) -> Result<LogIntegrand> {
    LogIntegrand::new(vec![int(1); k as usize], false, vec![(a, k + 1)], vec![])
}

fn exact_parameter(a: f64) -> Result<Rational> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::NonPositiveArgument(a));
    }
    from_f64(a).ok_or(Error::NonPositiveArgument(a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EqualityLevel {
    Structural,
    Numerical,
    Quadrature,
}

impl fmt::Display for EqualityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EqualityLevel::Structural => "structural",
            EqualityLevel::Numerical => "numerical",
            EqualityLevel::Quadrature => "quadrature",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FormComparison {
    /// `None` when the forms disagree at some probe point.
    pub level: Option<EqualityLevel>,
    pub max_rel_err: f64,
    pub max_abs_err: f64,
}

impl FormComparison {
    pub fn agrees(&self) -> bool {
        self.level.is_some()
    }
}

/// Absolute and relative error of `lhs` against `rhs`.
pub fn errors(lhs: f64, rhs: f64) -> (f64, f64) {
    let abs = (lhs - rhs).abs();
    let rel = if rhs == 0.0 { abs } else { abs / rhs.abs() };
    (abs, rel)
}

/// rel ≤ tol, or abs ≤ 1e−12 when |rhs| < 1e−14.
pub fn within_tolerance(lhs: f64, rhs: f64, tol: f64) -> bool {
    let (abs, rel) = errors(lhs, rhs);
    if rhs.abs() < NEAR_ZERO {
        abs <= NEAR_ZERO_ABS_TOL
    } else {
        rel <= tol
    }
}

/// Structural equality first, then agreement at [`PROBE_POINTS`] to 1e−12.
pub fn compare_forms(lhs: &LogPolyExpr, rhs: &LogPolyExpr) -> Result<FormComparison> {
    if lhs == rhs {
        return Ok(FormComparison {
            level: Some(EqualityLevel::Structural),
            max_rel_err: 0.0,
            max_abs_err: 0.0,
        });
    }
    let mut max_rel_err: f64 = 0.0;
    let mut max_abs_err: f64 = 0.0;
    let mut agree = true;
    for &p in &PROBE_POINTS {
        let (l, r) = (lhs.evaluate(p)?, rhs.evaluate(p)?);
        let (abs, rel) = errors(l, r);
        max_abs_err = max_abs_err.max(abs);
        max_rel_err = max_rel_err.max(rel);
        agree &= within_tolerance(l, r, NUMERICAL_TOLERANCE);
    }
    Ok(FormComparison {
        level: agree.then_some(EqualityLevel::Numerical),
        max_rel_err,
        max_abs_err,
    })
}

#[cfg(test)]
mod tests;
