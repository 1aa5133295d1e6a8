use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{big, fib_signed, int, lucas_signed, rat, to_f64, Rational};
use crate::constants::sqrt5_rational;

/// p + q√5 with rational p, q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sqrt5 {
    pub p: Rational,
    pub q: Rational,
}

impl Sqrt5 {
    pub fn new(p: Rational, q: Rational) -> Self {
        Sqrt5 { p, q }
    }

    pub fn rational(p: Rational) -> Self {
        Sqrt5 {
            p,
            q: Rational::zero(),
        }
    }

    pub fn integer(value: i64) -> Self {
        Sqrt5::rational(int(value))
    }

    pub fn zero() -> Self {
        Sqrt5::integer(0)
    }

    pub fn one() -> Self {
        Sqrt5::integer(1)
    }

    pub fn sqrt5() -> Self {
        Sqrt5::new(Rational::zero(), Rational::one())
    }

    /// α = (1 + √5)/2
    pub fn alpha() -> Self {
        Sqrt5::new(rat(1, 2), rat(1, 2))
    }

    /// β = (1 − √5)/2
    pub fn beta() -> Self {
        Sqrt5::new(rat(1, 2), rat(-1, 2))
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// p − q√5
    pub fn conj(&self) -> Self {
        Sqrt5::new(self.p.clone(), -&self.q)
    }

    /// (p + q√5)(p − q√5) = p² − 5q²
    pub fn norm(&self) -> Rational {
        &self.p * &self.p - int(5) * &self.q * &self.q
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Sqrt5::new(&self.p / &n, -&self.q / &n))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Sqrt5::new(&self.p * factor, &self.q * factor)
    }

    pub fn pow(&self, exponent: i64) -> Self {
        let base = if exponent < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut result = Sqrt5::one();
        let mut square = base;
        let mut e = exponent.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &square;
            }
            square = &square * &square;
            e >>= 1;
        }
        result
    }

    /// Rational approximation with roughly 40 correct significant digits.
    ///
    /// When p and q√5 have opposite signs the value is computed as
    /// (p² − 5q²)/(p − q√5), which keeps full relative accuracy.
    pub fn approx_rational(&self) -> Rational {
        let s = sqrt5_rational();
        if self.q.is_zero() {
            return self.p.clone();
        }
        let same_sign = self.p.is_zero() || (self.p.is_positive() == self.q.is_positive());
        if same_sign {
            &self.p + &self.q * s
        } else {
            self.norm() / (&self.p - &self.q * s)
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.approx_rational())
    }
}

/// αⁿ = (Lₙ + Fₙ√5)/2 for any integer n.
pub fn golden_power(n: i64) -> Sqrt5 {
    let half = rat(1, 2);
    Sqrt5::new(big(lucas_signed(n)) * &half, big(fib_signed(n)) * half)
}

impl fmt::Display for Sqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.p.is_zero(), self.q.is_zero()) {
            (_, true) => write!(f, "{}", self.p),
            (true, false) => write!(f, "{}*sqrt5", self.q),
            (false, false) => write!(f, "({} + {}*sqrt5)", self.p, self.q),
        }
    }
}

impl<'a> Add<&'a Sqrt5> for &'a Sqrt5 {
    type Output = Sqrt5;
    fn add(self, rhs: &Sqrt5) -> Sqrt5 {
        Sqrt5::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl<'a> Sub<&'a Sqrt5> for &'a Sqrt5 {
    type Output = Sqrt5;
    fn sub(self, rhs: &Sqrt5) -> Sqrt5 {
        Sqrt5::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl<'a> Mul<&'a Sqrt5> for &'a Sqrt5 {
    type Output = Sqrt5;
    fn mul(self, rhs: &Sqrt5) -> Sqrt5 {
        Sqrt5::new(
            &self.p * &rhs.p + int(5) * &self.q * &rhs.q,
            &self.p * &rhs.q + &self.q * &rhs.p,
        )
    }
}

impl<'a> Div<&'a Sqrt5> for &'a Sqrt5 {
    type Output = Sqrt5;
    fn div(self, rhs: &Sqrt5) -> Sqrt5 {
        self * &rhs.inverse().expect("division by zero in Q(sqrt 5)")
    }
}

impl Neg for &Sqrt5 {
    type Output = Sqrt5;
    fn neg(self) -> Sqrt5 {
        Sqrt5::new(-&self.p, -&self.q)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Sqrt5> for Sqrt5 {
            type Output = Sqrt5;
            fn $method(self, rhs: Sqrt5) -> Sqrt5 {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Sqrt5> for Sqrt5 {
            type Output = Sqrt5;
            fn $method(self, rhs: &Sqrt5) -> Sqrt5 {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Sqrt5 {
    type Output = Sqrt5;
    fn neg(self) -> Sqrt5 {
        -&self
    }
}
