use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{harmonic, Rational};
use crate::error::{Error, Result};

/// Fₙ by the fast-doubling recurrences.
pub fn fib(n: u64) -> BigInt {
    fib_pair(n).0
}

/// Lₙ = 2Fₙ₊₁ − Fₙ.
pub fn lucas(n: u64) -> BigInt {
    let (f, f1) = fib_pair(n);
    f1 * 2 - f
}

// (Fₙ, Fₙ₊₁)
fn fib_pair(n: u64) -> (BigInt, BigInt) {
    if n == 0 {
        return (BigInt::zero(), BigInt::one());
    }
    let (a, b) = fib_pair(n / 2);
    let c = &a * (&b * 2 - &a);
    let d = &a * &a + &b * &b;
    if n % 2 == 0 {
        (c, d)
    } else {
        let e = &c + &d;
        (d, e)
    }
}

/// Fₙ extended to negative indices by F₋ₙ = (−1)ⁿ⁺¹Fₙ.
pub fn fib_signed(n: i64) -> BigInt {
    let value = fib(n.unsigned_abs());
    if n < 0 && n % 2 == 0 {
        -value
    } else {
        value
    }
}

/// Lₙ extended to negative indices by L₋ₙ = (−1)ⁿLₙ.
pub fn lucas_signed(n: i64) -> BigInt {
    let value = lucas(n.unsigned_abs());
    if n < 0 && n % 2 != 0 {
        -value
    } else {
        value
    }
}

/// Precomputed F₀..F_N, L₀..L_N and H₀..H_N.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceTable {
    pub fib: Vec<BigInt>,
    pub lucas: Vec<BigInt>,
    pub harmonic: Vec<Rational>,
}

impl SequenceTable {
    pub fn new(max_index: usize) -> Self {
        let mut fib = Vec::with_capacity(max_index + 1);
        let mut lucas = Vec::with_capacity(max_index + 1);
        let mut harmonic_numbers = Vec::with_capacity(max_index + 1);
        for n in 0..=max_index {
            match n {
                0 => {
                    fib.push(BigInt::zero());
                    lucas.push(BigInt::from(2));
                    harmonic_numbers.push(harmonic(0));
                }
                1 => {
                    fib.push(BigInt::one());
                    lucas.push(BigInt::one());
                    harmonic_numbers.push(harmonic(1));
                }
                _ => {
                    fib.push(&fib[n - 1] + &fib[n - 2]);
                    lucas.push(&lucas[n - 1] + &lucas[n - 2]);
                    let next = &harmonic_numbers[n - 1]
                        + Rational::new(BigInt::one(), BigInt::from(n));
                    harmonic_numbers.push(next);
                }
            }
        }
        SequenceTable {
            fib,
            lucas,
            harmonic: harmonic_numbers,
        }
    }

    pub fn len(&self) -> usize {
        self.fib.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fib.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeqKind {
    Fib,
    Lucas,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeqTerm {
    pub kind: SeqKind,
    pub index: i64,
}

impl SeqTerm {
    pub fn value(&self) -> BigInt {
        match self.kind {
            SeqKind::Fib => fib_signed(self.index),
            SeqKind::Lucas => lucas_signed(self.index),
        }
    }
}

impl fmt::Display for SeqTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            SeqKind::Fib => 'F',
            SeqKind::Lucas => 'L',
        };
        write!(f, "{letter}[{}]", self.index)
    }
}

/// Which sum or difference is being factored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SumKind {
    FibPlusFib,
    FibMinusFib,
    LucasPlusLucas,
    LucasMinusLucas,
}

impl SumKind {
    pub const ALL: [SumKind; 4] = [
        SumKind::FibPlusFib,
        SumKind::FibMinusFib,
        SumKind::LucasPlusLucas,
        SumKind::LucasMinusLucas,
    ];

    /// The left-hand side evaluated directly from the sequences.
    pub fn direct(self, u: i64, v: i64) -> BigInt {
        match self {
            SumKind::FibPlusFib => fib_signed(u) + fib_signed(v),
            SumKind::FibMinusFib => fib_signed(u) - fib_signed(v),
            SumKind::LucasPlusLucas => lucas_signed(u) + lucas_signed(v),
            SumKind::LucasMinusLucas => lucas_signed(u) - lucas_signed(v),
        }
    }
}

/// `scale · left · right`, with `scale` either 1 or 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumFactorization {
    pub scale: u8,
    pub left: SeqTerm,
    pub right: SeqTerm,
}

impl SumFactorization {
    pub fn value(&self) -> BigInt {
        BigInt::from(self.scale) * self.left.value() * self.right.value()
    }
}

impl fmt::Display for SumFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale != 1 {
            write!(f, "{}*", self.scale)?;
        }
        write!(f, "{}*{}", self.left, self.right)
    }
}

/// Factors F_u ± F_v or L_u ± L_v into a product of two sequence terms with
/// indices (u−v)/2 and (u+v)/2. Requires u ≡ v (mod 2).
pub fn fib_sum_factorization(u: i64, v: i64, kind: SumKind) -> Result<SumFactorization> {
    if (u - v).rem_euclid(2) != 0 {
        return Err(Error::ParityMismatch { u, v });
    }
    let half_diff = (u - v) / 2;
    let half_sum = (u + v) / 2;
    let diff_even = half_diff % 2 == 0;
    let term = |kind, index| SeqTerm { kind, index };
    use SeqKind::{Fib, Lucas};
    let (scale, left, right) = match (kind, diff_even) {
        (SumKind::FibPlusFib, true) | (SumKind::FibMinusFib, false) => (1, Lucas, Fib),
        (SumKind::FibPlusFib, false) | (SumKind::FibMinusFib, true) => (1, Fib, Lucas),
        (SumKind::LucasPlusLucas, true) | (SumKind::LucasMinusLucas, false) => (1, Lucas, Lucas),
        (SumKind::LucasPlusLucas, false) | (SumKind::LucasMinusLucas, true) => (5, Fib, Fib),
    };
    Ok(SumFactorization {
        scale,
        left: term(left, half_diff),
        right: term(right, half_sum),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_and_small_values() {
        assert_eq!(fib(0), BigInt::zero());
        assert_eq!(lucas(0), BigInt::from(2));
        assert_eq!(fib(10), BigInt::from(55));
        assert_eq!(lucas(8), BigInt::from(47));
    }

    #[test]
    fn table_matches_closed_routes() {
        let table = SequenceTable::new(500);
        for n in [0usize, 1, 2, 17, 93, 94, 250, 500] {
            assert_eq!(table.fib[n], fib(n as u64));
            assert_eq!(table.lucas[n], lucas(n as u64));
        }
        // F_500 has 105 digits
        assert_eq!(table.fib[500].to_string().len(), 105);
    }

    #[test]
    fn negative_index_extension() {
        for n in 0..30i64 {
            let sign_f = if n % 2 == 0 { -1 } else { 1 };
            let sign_l = if n % 2 == 0 { 1 } else { -1 };
            assert_eq!(fib_signed(-n), fib_signed(n) * sign_f);
            assert_eq!(lucas_signed(-n), lucas_signed(n) * sign_l);
            // the recurrence still holds through zero
            assert_eq!(fib_signed(-n) , fib_signed(-n + 2) - fib_signed(-n + 1));
            assert_eq!(lucas_signed(-n), lucas_signed(-n + 2) - lucas_signed(-n + 1));
        }
    }

    #[test]
    fn factorization_examples() {
        let f = fib_sum_factorization(6, 2, SumKind::FibPlusFib).unwrap();
        assert_eq!(f.to_string(), "L[2]*F[4]");
        assert_eq!(f.value(), BigInt::from(9));

        let f = fib_sum_factorization(4, 4, SumKind::LucasMinusLucas).unwrap();
        assert_eq!(f.value(), BigInt::zero());

        let f = fib_sum_factorization(8, 2, SumKind::LucasPlusLucas).unwrap();
        assert_eq!(f.to_string(), "5*F[3]*F[5]");
        assert_eq!(f.value(), BigInt::from(50));
    }

    #[test]
    fn factorization_rejects_mixed_parity() {
        assert_eq!(
            fib_sum_factorization(3, 2, SumKind::FibPlusFib),
            Err(Error::ParityMismatch { u: 3, v: 2 })
        );
        assert!(fib_sum_factorization(-3, 2, SumKind::LucasMinusLucas).is_err());
    }

    #[test]
    fn factorization_exhaustive_small_grid() {
        for u in -40i64..=40 {
            for v in -40i64..=40 {
                if (u - v) % 2 != 0 {
                    continue;
                }
                for kind in SumKind::ALL {
                    let f = fib_sum_factorization(u, v, kind).unwrap();
                    assert_eq!(f.value(), kind.direct(u, v), "u={u} v={v} {kind:?}");
                }
            }
        }
    }
}
