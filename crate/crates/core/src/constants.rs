//! Shared transcendental constants.
//!
//! Every constant is kept as a 45-digit decimal literal. The exact layer parses
//! the literal into a rational (so golden-basis values can be reduced to a
//! float with ~40 correct digits before the final rounding), and the oracle
//! layer uses the `f64` rounding of the same literal.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::Rational;

/// π
pub const PI_DECIMAL: &str = "3.1415926535897932384626433832795028841971694";
/// π²
pub const PI_SQUARED_DECIMAL: &str = "9.86960440108935861883449099987615113531369941";
/// √5
pub const SQRT5_DECIMAL: &str = "2.23606797749978969640917366873127623544061836";
/// ln α, α = (1 + √5)/2
pub const LN_ALPHA_DECIMAL: &str = "0.481211825059603447497758913424368423135184334";

pub const PI: f64 = 3.1415926535897932384626433832795028841971694;
pub const PI_SQUARED: f64 = 9.86960440108935861883449099987615113531369941;
pub const SQRT5: f64 = 2.23606797749978969640917366873127623544061836;
pub const LN_ALPHA: f64 = 0.481211825059603447497758913424368423135184334;
/// α = (1 + √5)/2
pub const ALPHA: f64 = 1.61803398874989484820458683436563811772030918;

/// Parses a plain decimal literal (`[-]digits[.digits]`) into an exact rational.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    if !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut numer: BigInt = digits.parse().unwrap_or_else(|_| BigInt::zero());
    if negative {
        numer = -numer;
    }
    let mut denom = BigInt::one();
    for _ in 0..frac_part.len() {
        denom *= 10;
    }
    Some(Rational::new(numer, denom))
}

fn cached(cell: &'static OnceLock<Rational>, text: &str) -> &'static Rational {
    cell.get_or_init(|| parse_decimal(text).expect("constant literal is a valid decimal"))
}

pub fn pi_squared_rational() -> &'static Rational {
    static CELL: OnceLock<Rational> = OnceLock::new();
    cached(&CELL, PI_SQUARED_DECIMAL)
}

pub fn sqrt5_rational() -> &'static Rational {
    static CELL: OnceLock<Rational> = OnceLock::new();
    cached(&CELL, SQRT5_DECIMAL)
}

pub fn ln_alpha_rational() -> &'static Rational {
    static CELL: OnceLock<Rational> = OnceLock::new();
    cached(&CELL, LN_ALPHA_DECIMAL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn literals_agree_with_std() {
        assert_eq!(PI, std::f64::consts::PI);
        assert_eq!(SQRT5, 5f64.sqrt());
        assert!((LN_ALPHA - ALPHA.ln()).abs() < 1e-16);
        assert!((PI_SQUARED - PI * PI).abs() < 1e-14);
    }

    #[test]
    fn rational_forms_match_float_forms() {
        assert_eq!(pi_squared_rational().to_f64().unwrap(), PI_SQUARED);
        assert_eq!(sqrt5_rational().to_f64().unwrap(), SQRT5);
        assert_eq!(ln_alpha_rational().to_f64().unwrap(), LN_ALPHA);
    }

    #[test]
    fn decimal_parser() {
        assert_eq!(parse_decimal("-1.25"), Some(Rational::new(BigInt::from(-5), BigInt::from(4))));
        assert_eq!(parse_decimal("3"), Some(Rational::from_integer(BigInt::from(3))));
        assert_eq!(parse_decimal("1.2x"), None);
        assert_eq!(parse_decimal("."), None);
    }

    #[test]
    fn sqrt5_literal_squares_to_five() {
        let s = sqrt5_rational();
        let err = (s * s - Rational::from_integer(BigInt::from(5))).to_f64().unwrap();
        assert!(err.abs() < 1e-40);
    }
}
