//! Deterministic text rendering.
//!
//! ```text
//! expr   := "0" | term { (" + " | " - ") term }
//! term   := coeff { "*" factor } | factor { "*" factor }
//! coeff  := integer | "(" integer "/" integer ")" | pi2 | "(" rational " + " pi2 ")"
//! pi2    := [ coeff-rational "*" ] "pi^2"
//! factor := "ln(a)" | "ln(a)^" int | "a" | "a^" int | "(a+1)^" int
//! ```
//!
//! Factors appear in that order and terms in canonical order; a negative leading coefficient of a later
//! term is rendered through " - ".

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{LogPolyExpr, LogTerm, Pi2Coeff};
use crate::exact::Rational;

fn rational_str(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

fn coeff_str(c: &Pi2Coeff) -> String {
    let pi2 = |r: &Rational| {
        if r.is_one() {
            "pi^2".to_string()
        } else if *r == -Rational::one() {
            "-pi^2".to_string()
        } else {
            format!("{}*pi^2", rational_str(r))
        }
    };
    match (c.r0.is_zero(), c.r1.is_zero()) {
        (_, true) => rational_str(&c.r0),
        (true, false) => pi2(&c.r1),
        (false, false) => format!("({} + {})", rational_str(&c.r0), pi2(&c.r1)),
    }
}

fn is_negative(c: &Pi2Coeff) -> bool {
    // sign of the leading nonzero component
    if c.r0.is_zero() {
        c.r1.is_negative()
    } else {
        c.r0.is_negative() && !c.r1.is_positive()
    }
}

fn term_str(t: &LogTerm) -> String {
    let mut factors = Vec::new();
    match t.pow_log {
        0 => {}
        1 => factors.push("ln(a)".to_string()),
        s => factors.push(format!("ln(a)^{s}")),
    }
    match t.pow_a {
        0 => {}
        1 => factors.push("a".to_string()),
        e => factors.push(format!("a^{e}")),
    }
    if t.pow_a1 != 0 {
        factors.push(format!("(a+1)^{}", t.pow_a1));
    }
    let coeff = coeff_str(&t.coeff);
    if factors.is_empty() {
        return coeff;
    }
    let body = factors.join("*");
    match coeff.as_str() {
        "1" => body,
        "-1" => format!("-{body}"),
        _ => format!("{coeff}*{body}"),
    }
}

impl fmt::Display for LogPolyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, t) in self.terms().enumerate() {
            if i == 0 {
                write!(f, "{}", term_str(&t))?;
            } else if is_negative(&t.coeff) {
                let flipped = LogTerm {
                    coeff: -&t.coeff,
                    ..t
                };
                write!(f, " - {}", term_str(&flipped))?;
            } else {
                write!(f, " + {}", term_str(&t))?;
            }
        }
        Ok(())
    }
}
