//! A differentiation-closed expression class in one positive variable `a`.
//!
//! Every expression is a finite sum of `c · aⁱ · (a+1)ʲ · lnˢa` with `c` in
//! `Q + Q·π²`. Expressions are kept in partial-fraction normal form: the only
//! monomials stored are `aⁱ · lnˢa` (any integer `i`) and `(a+1)⁻ʲ · lnˢa`
//! (`j ≥ 1`). Each function in the class has exactly one such representation,
//! so two expressions are equal iff their term maps are equal.

mod display;
mod lemma;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::constants::pi_squared_rational;
use crate::error::{Error, Result};
use crate::exact::{big, binomial, from_f64, int, to_f64, Rational};

pub use lemma::{lemma_derivative, lemma_derivative_rational, lemma_finite_difference};

/// r0 + r1·π²
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Pi2Coeff {
    pub r0: Rational,
    pub r1: Rational,
}

impl Pi2Coeff {
    pub fn new(r0: Rational, r1: Rational) -> Self {
        Pi2Coeff { r0, r1 }
    }

    pub fn rational(r0: Rational) -> Self {
        Pi2Coeff {
            r0,
            r1: Rational::zero(),
        }
    }

    pub fn pi_squared(r1: Rational) -> Self {
        Pi2Coeff {
            r0: Rational::zero(),
            r1,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.r0.is_zero() && self.r1.is_zero()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Pi2Coeff::new(&self.r0 * factor, &self.r1 * factor)
    }

    /// Fails when both factors carry π², since π⁴ is outside the ring.
    pub fn checked_mul(&self, rhs: &Pi2Coeff) -> Result<Pi2Coeff> {
        if !self.r1.is_zero() && !rhs.r1.is_zero() {
            return Err(Error::PiFourthPower);
        }
        Ok(Pi2Coeff::new(
            &self.r0 * &rhs.r0,
            &self.r0 * &rhs.r1 + &self.r1 * &rhs.r0,
        ))
    }
}

impl Add for &Pi2Coeff {
    type Output = Pi2Coeff;
    fn add(self, rhs: &Pi2Coeff) -> Pi2Coeff {
        Pi2Coeff::new(&self.r0 + &rhs.r0, &self.r1 + &rhs.r1)
    }
}

impl Neg for &Pi2Coeff {
    type Output = Pi2Coeff;
    fn neg(self) -> Pi2Coeff {
        Pi2Coeff::new(-&self.r0, -&self.r1)
    }
}

/// One stored monomial `coeff · a^pow_a · (a+1)^pow_a1 · ln(a)^pow_log`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTerm {
    pub coeff: Pi2Coeff,
    pub pow_a: i32,
    pub pow_a1: i32,
    pub pow_log: u32,
}

// Field order gives the canonical sort (pow_log, pow_a, pow_a1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    pow_log: u32,
    pow_a: i32,
    pow_a1: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LogPolyExpr {
    terms: BTreeMap<Key, Pi2Coeff>,
}

impl LogPolyExpr {
    pub fn zero() -> Self {
        LogPolyExpr::default()
    }

    pub fn one() -> Self {
        LogPolyExpr::rational(Rational::one())
    }

    pub fn rational(value: Rational) -> Self {
        LogPolyExpr::term(Pi2Coeff::rational(value), 0, 0, 0)
    }

    pub fn integer(value: i64) -> Self {
        LogPolyExpr::rational(int(value))
    }

    pub fn pi_squared() -> Self {
        LogPolyExpr::term(Pi2Coeff::pi_squared(Rational::one()), 0, 0, 0)
    }

    /// aⁱ
    pub fn a_pow(exponent: i32) -> Self {
        LogPolyExpr::term(Pi2Coeff::rational(Rational::one()), exponent, 0, 0)
    }

    /// (a+1)ʲ
    pub fn a1_pow(exponent: i32) -> Self {
        LogPolyExpr::term(Pi2Coeff::rational(Rational::one()), 0, exponent, 0)
    }

    /// lnˢa
    pub fn ln_pow(exponent: u32) -> Self {
        LogPolyExpr::term(Pi2Coeff::rational(Rational::one()), 0, 0, exponent)
    }

    /// A single monomial, brought to normal form.
    pub fn term(coeff: Pi2Coeff, pow_a: i32, pow_a1: i32, pow_log: u32) -> Self {
        let mut e = LogPolyExpr::zero();
        e.add_monomial(&coeff, pow_a, pow_a1, pow_log);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = LogTerm>>(terms: I) -> Self {
        let mut e = LogPolyExpr::zero();
        for t in terms {
            e.add_monomial(&t.coeff, t.pow_a, t.pow_a1, t.pow_log);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = LogTerm> + '_ {
        self.terms.iter().map(|(k, c)| LogTerm {
            coeff: c.clone(),
            pow_a: k.pow_a,
            pow_a1: k.pow_a1,
            pow_log: k.pow_log,
        })
    }

    pub fn max_log_power(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.pow_log).max()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return LogPolyExpr::zero();
        }
        LogPolyExpr {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (*k, c.scale(factor)))
                .collect(),
        }
    }

    pub fn scale_int(&self, factor: impl Into<BigInt>) -> Self {
        self.scale(&big(factor))
    }

    pub fn checked_mul(&self, rhs: &LogPolyExpr) -> Result<LogPolyExpr> {
        let mut out = LogPolyExpr::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                let c = c1.checked_mul(c2)?;
                out.add_monomial(
                    &c,
                    k1.pow_a + k2.pow_a,
                    k1.pow_a1 + k2.pow_a1,
                    k1.pow_log + k2.pow_log,
                );
            }
        }
        Ok(out)
    }

    /// Exact `times`-fold derivative with respect to `a`.
    pub fn differentiate(&self, times: u32) -> LogPolyExpr {
        let mut current = self.clone();
        for _ in 0..times {
            current = current.derivative();
        }
        current
    }

    fn derivative(&self) -> LogPolyExpr {
        let mut out = LogPolyExpr::zero();
        for (k, c) in &self.terms {
            if k.pow_a != 0 {
                out.add_monomial(&c.scale(&int(k.pow_a.into())), k.pow_a - 1, k.pow_a1, k.pow_log);
            }
            if k.pow_a1 != 0 {
                out.add_monomial(&c.scale(&int(k.pow_a1.into())), k.pow_a, k.pow_a1 - 1, k.pow_log);
            }
            if k.pow_log != 0 {
                out.add_monomial(&c.scale(&int(k.pow_log.into())), k.pow_a - 1, k.pow_a1, k.pow_log - 1);
            }
        }
        out
    }

    /// The image under a ↦ 1/a: lnˢ(1/a) = (−1)ˢlnˢa and
    /// (1/a + 1)ʲ = (a+1)ʲ·a⁻ʲ.
    pub fn substitute_reciprocal(&self) -> LogPolyExpr {
        let mut out = LogPolyExpr::zero();
        for (k, c) in &self.terms {
            let c = if k.pow_log % 2 == 1 { -c } else { c.clone() };
            out.add_monomial(&c, -k.pow_a - k.pow_a1, k.pow_a1, k.pow_log);
        }
        out
    }

    /// Value at a point `a > 0`.
    ///
    /// For each power of ln a, the rational-function part is summed exactly at
    /// the (dyadic) rational value of `a`, combined with a 45-digit image of
    /// π², and rounded once; only the final combination with lnˢa happens in
    /// floating point. Partial-fraction terms cancel heavily for large pole
    /// orders, which plain f64 summation cannot survive.
    pub fn evaluate(&self, a: f64) -> Result<f64> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::NonPositiveArgument(a));
        }
        let a_exact = from_f64(a).ok_or(Error::NonPositiveArgument(a))?;
        let groups = self.exact_groups(&a_exact);
        let ln_a = a.ln();
        let mut total = 0.0;
        for (pow_log, value) in groups {
            total += to_f64(&value) * ln_a.powi(pow_log as i32);
        }
        Ok(total)
    }

    // Σ over terms with the same log power, as exact rationals in canonical
    // order. Each group is accumulated as one integer over a common
    // denominator so that only the final fraction is reduced.
    fn exact_groups(&self, a: &Rational) -> Vec<(u32, Rational)> {
        let pi2 = pi_squared_rational();
        let mut groups = Vec::new();
        let mut start = 0usize;
        let keys: Vec<(&Key, &Pi2Coeff)> = self.terms.iter().collect();
        while start < keys.len() {
            let pow_log = keys[start].0.pow_log;
            let end = keys[start..]
                .iter()
                .position(|(k, _)| k.pow_log != pow_log)
                .map_or(keys.len(), |p| start + p);
            let slice = &keys[start..end];
            let rational_part = sum_at(slice.iter().map(|(k, c)| (**k, &c.r0)), a);
            let pi2_part = sum_at(slice.iter().map(|(k, c)| (**k, &c.r1)), a);
            groups.push((pow_log, rational_part + pi2_part * pi2));
            start = end;
        }
        groups
    }

    /// Adds `coeff · a^e1 · (a+1)^e2 · ln^s a`, decomposing it into the
    /// partial-fraction basis.
    fn add_monomial(&mut self, coeff: &Pi2Coeff, e1: i32, e2: i32, s: u32) {
        if coeff.is_zero() {
            return;
        }
        if e2 >= 0 {
            // (a+1)^e2 = Σ C(e2, i) aⁱ
            for i in 0..=e2 {
                let c = coeff.scale(&big(binomial(e2.into(), i.into())));
                self.insert_basis(c, e1 + i, 0, s);
            }
        } else if e1 == 0 {
            self.insert_basis(coeff.clone(), 0, e2, s);
        } else if e1 > 0 {
            // aᵉ = ((a+1) − 1)ᵉ
            for i in 0..=e1 {
                let sign = if (e1 - i) % 2 == 0 { 1 } else { -1 };
                let c = coeff.scale(&big(binomial(e1.into(), i.into()) * sign));
                self.add_monomial(&c, 0, e2 + i, s);
            }
        } else {
            // a⁻ᵖ(a+1)⁻q = Σᵢ (−1)^{p−i} C(p+q−i−1, q−1) a⁻ⁱ
            //            + Σⱼ (−1)^p C(p+q−j−1, p−1) (a+1)⁻ʲ
            let p = i64::from(-e1);
            let q = i64::from(-e2);
            for i in 1..=p {
                let sign = if (p - i) % 2 == 0 { 1 } else { -1 };
                let c = coeff.scale(&big(binomial(p + q - i - 1, q - 1) * sign));
                self.insert_basis(c, -(i as i32), 0, s);
            }
            let sign = if p % 2 == 0 { 1 } else { -1 };
            for j in 1..=q {
                let c = coeff.scale(&big(binomial(p + q - j - 1, p - 1) * sign));
                self.insert_basis(c, 0, -(j as i32), s);
            }
        }
    }

    fn insert_basis(&mut self, coeff: Pi2Coeff, pow_a: i32, pow_a1: i32, pow_log: u32) {
        debug_assert!(pow_a1 <= 0 && (pow_a1 == 0 || pow_a == 0));
        if coeff.is_zero() {
            return;
        }
        let key = Key {
            pow_log,
            pow_a,
            pow_a1,
        };
        let merged = match self.terms.get(&key) {
            Some(existing) => existing + &coeff,
            None => coeff,
        };
        if merged.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, merged);
        }
    }
}

// Σ c·a^i·(a+1)^j over basis monomials, exactly.
fn sum_at<'a>(terms: impl Iterator<Item = (Key, &'a Rational)> + Clone, a: &Rational) -> Rational {
    let n = a.numer().clone();
    let d = a.denom().clone();
    let m = &n + &d;
    let (mut max_pos, mut max_neg, mut max_pole) = (0u32, 0u32, 0u32);
    let mut lcm = BigInt::one();
    let mut any = false;
    for (k, c) in terms.clone() {
        if c.is_zero() {
            continue;
        }
        any = true;
        if k.pow_a >= 0 {
            max_pos = max_pos.max(k.pow_a as u32);
        } else {
            max_neg = max_neg.max(k.pow_a.unsigned_abs());
        }
        max_pole = max_pole.max(k.pow_a1.unsigned_abs());
        lcm = num_integer::Integer::lcm(&lcm, c.denom());
    }
    if !any {
        return Rational::zero();
    }
    let powers = |base: &BigInt, top: u32| {
        let mut v = Vec::with_capacity(top as usize + 1);
        v.push(BigInt::one());
        for i in 1..=top as usize {
            let next = &v[i - 1] * base;
            v.push(next);
        }
        v
    };
    let pn = powers(&n, max_pos + max_neg);
    let pd = powers(&d, max_pos + max_neg.max(max_pole));
    let pm = powers(&m, max_pole);
    // common denominator d^P · n^N · m^J
    let (p, q, j) = (max_pos as usize, max_neg as usize, max_pole as usize);
    let mut numer = BigInt::zero();
    for (k, c) in terms {
        if c.is_zero() {
            continue;
        }
        let scaled = c.numer() * (&lcm / c.denom());
        let monomial = if k.pow_a1 < 0 {
            let e = k.pow_a1.unsigned_abs() as usize;
            &pd[e + p] * &pn[q] * &pm[j - e]
        } else if k.pow_a >= 0 {
            let e = k.pow_a as usize;
            &pn[e + q] * &pd[p - e] * &pm[j]
        } else {
            let e = k.pow_a.unsigned_abs() as usize;
            &pd[e + p] * &pn[q - e] * &pm[j]
        };
        numer += scaled * monomial;
    }
    let denom = lcm * &pd[p] * &pn[q] * &pm[j];
    Rational::new(numer, denom)
}

impl Add for &LogPolyExpr {
    type Output = LogPolyExpr;
    fn add(self, rhs: &LogPolyExpr) -> LogPolyExpr {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert_basis(c.clone(), k.pow_a, k.pow_a1, k.pow_log);
        }
        out
    }
}

impl Sub for &LogPolyExpr {
    type Output = LogPolyExpr;
    fn sub(self, rhs: &LogPolyExpr) -> LogPolyExpr {
        self + &(-rhs)
    }
}

impl Neg for &LogPolyExpr {
    type Output = LogPolyExpr;
    fn neg(self) -> LogPolyExpr {
        LogPolyExpr {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

/// Panics if the product would contain π⁴; use [`LogPolyExpr::checked_mul`]
/// where that can happen.
impl Mul for &LogPolyExpr {
    type Output = LogPolyExpr;
    fn mul(self, rhs: &LogPolyExpr) -> LogPolyExpr {
        self.checked_mul(rhs)
            .expect("product of two pi^2 coefficients")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<LogPolyExpr> for LogPolyExpr {
            type Output = LogPolyExpr;
            fn $method(self, rhs: LogPolyExpr) -> LogPolyExpr {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a LogPolyExpr> for LogPolyExpr {
            type Output = LogPolyExpr;
            fn $method(self, rhs: &LogPolyExpr) -> LogPolyExpr {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<LogPolyExpr> for &'a LogPolyExpr {
            type Output = LogPolyExpr;
            fn $method(self, rhs: LogPolyExpr) -> LogPolyExpr {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LogPolyExpr {
    type Output = LogPolyExpr;
    fn neg(self) -> LogPolyExpr {
        -&self
    }
}

impl std::iter::Sum for LogPolyExpr {
    fn sum<I: Iterator<Item = LogPolyExpr>>(iter: I) -> LogPolyExpr {
        iter.fold(LogPolyExpr::zero(), |acc, e| acc + e)
    }
}


impl LogPolyExpr {
    /// Σ |group value · lnˢa| over log powers: the scale against which
    /// floating-point cancellation in [`LogPolyExpr::evaluate`] is measured.
    pub fn magnitude(&self, a: f64) -> Result<f64> {
        if !(a > 0.0) || !a.is_finite() {
            return Err(Error::NonPositiveArgument(a));
        }
        let a_exact = from_f64(a).ok_or(Error::NonPositiveArgument(a))?;
        let ln_a = a.ln();
        Ok(self
            .exact_groups(&a_exact)
            .into_iter()
            .map(|(s, v)| (to_f64(&v) * ln_a.powi(s as i32)).abs())
            .sum())
    }
}
