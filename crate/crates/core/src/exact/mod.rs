//! Exact arithmetic: big rationals, Q(√5), harmonic numbers, Fibonacci and
//! Lucas sequences, and the golden constant basis {1, π², ln α, ln²α}.

mod golden;
mod sequences;
mod sqrt5;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use golden::GoldenValue;
pub use sequences::{
    fib, fib_signed, fib_sum_factorization, lucas, lucas_signed, SeqKind, SeqTerm, SequenceTable,
    SumFactorization, SumKind,
};
pub use sqrt5::{golden_power, Sqrt5};

/// Reduced fraction of big integers; the denominator is always positive.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn big(value: impl Into<BigInt>) -> Rational {
    Rational::from_integer(value.into())
}

/// Exact rational image of a finite float.
pub fn from_f64(value: f64) -> Option<Rational> {
    Rational::from_float(value)
}

/// Correctly rounded conversion; saturates to ±inf on overflow.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// C(n, j) with the combinatorial convention: zero unless 0 ≤ j ≤ n.
pub fn binomial(n: i64, j: i64) -> BigInt {
    if j < 0 || n < 0 || j > n {
        return BigInt::zero();
    }
    let j = j.min(n - j);
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Hₙ = Σ_{i=1..n} 1/i, with H₀ = 0.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).fold(Rational::zero(), |acc, i| acc + Rational::new(BigInt::one(), BigInt::from(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(1), int(1));
        assert_eq!(harmonic(4), rat(25, 12));
    }

    #[test]
    fn harmonic_increments() {
        for n in 1..=200u64 {
            assert_eq!(harmonic(n) - harmonic(n - 1), rat(1, n as i64));
        }
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
    }

    #[test]
    fn float_round_trip() {
        for v in [0.25, 1.618034, -3.5, 1e-300, 7.0] {
            assert_eq!(to_f64(&from_f64(v).unwrap()), v);
        }
        assert!(from_f64(f64::NAN).is_none());
    }
}
