use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::One;

use super::{to_f64, Rational, Sqrt5};
use crate::constants::{ln_alpha_rational, pi_squared_rational};

/// c0 + c1·π² + c2·ln α + c3·ln²α with every cᵢ in Q(√5).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GoldenValue {
    pub c0: Sqrt5,
    pub c1: Sqrt5,
    pub c2: Sqrt5,
    pub c3: Sqrt5,
}

impl Default for GoldenValue {
    fn default() -> Self {
        GoldenValue::zero()
    }
}

impl GoldenValue {
    pub fn new(c0: Sqrt5, c1: Sqrt5, c2: Sqrt5, c3: Sqrt5) -> Self {
        GoldenValue { c0, c1, c2, c3 }
    }

    pub fn zero() -> Self {
        GoldenValue::new(Sqrt5::zero(), Sqrt5::zero(), Sqrt5::zero(), Sqrt5::zero())
    }

    pub fn constant(c: Sqrt5) -> Self {
        GoldenValue {
            c0: c,
            ..GoldenValue::zero()
        }
    }

    pub fn pi_squared(c: Sqrt5) -> Self {
        GoldenValue {
            c1: c,
            ..GoldenValue::zero()
        }
    }

    pub fn ln_alpha(c: Sqrt5) -> Self {
        GoldenValue {
            c2: c,
            ..GoldenValue::zero()
        }
    }

    pub fn ln_alpha_squared(c: Sqrt5) -> Self {
        GoldenValue {
            c3: c,
            ..GoldenValue::zero()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    pub fn components(&self) -> [&Sqrt5; 4] {
        [&self.c0, &self.c1, &self.c2, &self.c3]
    }

    pub fn scale(&self, factor: &Sqrt5) -> Self {
        GoldenValue::new(
            &self.c0 * factor,
            &self.c1 * factor,
            &self.c2 * factor,
            &self.c3 * factor,
        )
    }

    pub fn scale_rational(&self, factor: &Rational) -> Self {
        GoldenValue::new(
            self.c0.scale(factor),
            self.c1.scale(factor),
            self.c2.scale(factor),
            self.c3.scale(factor),
        )
    }

    /// Combines the basis in exact arithmetic against 45-digit rational
    /// images of π², √5 and ln α, then rounds once.
    pub fn to_f64(&self) -> f64 {
        let ln_a = ln_alpha_rational();
        let total = self.c0.approx_rational()
            + self.c1.approx_rational() * pi_squared_rational()
            + self.c2.approx_rational() * ln_a
            + self.c3.approx_rational() * ln_a * ln_a;
        to_f64(&total)
    }
}

impl Add for &GoldenValue {
    type Output = GoldenValue;
    fn add(self, rhs: &GoldenValue) -> GoldenValue {
        GoldenValue::new(
            &self.c0 + &rhs.c0,
            &self.c1 + &rhs.c1,
            &self.c2 + &rhs.c2,
            &self.c3 + &rhs.c3,
        )
    }
}

impl Sub for &GoldenValue {
    type Output = GoldenValue;
    fn sub(self, rhs: &GoldenValue) -> GoldenValue {
        GoldenValue::new(
            &self.c0 - &rhs.c0,
            &self.c1 - &rhs.c1,
            &self.c2 - &rhs.c2,
            &self.c3 - &rhs.c3,
        )
    }
}

impl Add for GoldenValue {
    type Output = GoldenValue;
    fn add(self, rhs: GoldenValue) -> GoldenValue {
        &self + &rhs
    }
}

impl Sub for GoldenValue {
    type Output = GoldenValue;
    fn sub(self, rhs: GoldenValue) -> GoldenValue {
        &self - &rhs
    }
}

impl Neg for &GoldenValue {
    type Output = GoldenValue;
    fn neg(self) -> GoldenValue {
        GoldenValue::new(-&self.c0, -&self.c1, -&self.c2, -&self.c3)
    }
}

impl Neg for GoldenValue {
    type Output = GoldenValue;
    fn neg(self) -> GoldenValue {
        -&self
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &Sqrt5, basis: &str) -> fmt::Result {
    if basis.is_empty() {
        return write!(f, "{c}");
    }
    if c.is_rational() && c.p == Rational::one() {
        write!(f, "{basis}")
    } else if c.is_rational() && c.p == -Rational::one() {
        write!(f, "-{basis}")
    } else if c.is_rational() && c.p.is_integer() {
        write!(f, "{}*{basis}", c.p)
    } else if c.is_rational() {
        write!(f, "({})*{basis}", c.p)
    } else {
        write!(f, "{c}*{basis}")
    }
}

/// Renders e.g. `(1/2)*pi^2 + 2*ln(alpha)^2`.
impl fmt::Display for GoldenValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = [
            (&self.c0, ""),
            (&self.c1, "pi^2"),
            (&self.c2, "ln(alpha)"),
            (&self.c3, "ln(alpha)^2"),
        ];
        let mut first = true;
        for (c, basis) in parts {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write_coefficient(f, c, basis)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
