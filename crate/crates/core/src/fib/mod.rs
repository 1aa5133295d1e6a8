//! Fibonacci and Lucas specializations at a = α^{±2r}, where
//! x² + L_{2r}x + 1 = (x + α^{2r})(x + β^{2r}).
//!
//! Each family has three pieces: the integrand with Fibonacci/Lucas binomial
//! numerator, the right-hand side as displayed ([`build_rhs`]) and the
//! right-hand side re-derived by evaluating the closed forms at golden powers
//! in exact arithmetic ([`derive_rhs`]).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::closed::{closed_F0, closed_Fm0};
use crate::constants::ALPHA;
use crate::error::{Error, Result};
use crate::exact::{big, binomial, from_f64, golden_power, int, rat, GoldenValue, Rational, SequenceTable, Sqrt5};
use crate::logpoly::LogPolyExpr;
use crate::quad::LogIntegrand;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FibFamily {
    /// Lucas numerator over (x−1)(x²+3x+1)^{k+1}.
    SquareLucas,
    /// Fibonacci numerator over (x−1)(x²+3x+1)^{k+1}.
    SquareFib,
    EvenRLucas,
    EvenRFib,
    GeneralLucas,
    GeneralFib,
    CombMinusLucas,
    CombPlusLucas,
    CombMinusFib,
    CombPlusFib,
}

impl FibFamily {
    pub const ALL: [FibFamily; 10] = [
        FibFamily::SquareLucas,
        FibFamily::SquareFib,
        FibFamily::EvenRLucas,
        FibFamily::EvenRFib,
        FibFamily::GeneralLucas,
        FibFamily::GeneralFib,
        FibFamily::CombMinusLucas,
        FibFamily::CombPlusLucas,
        FibFamily::CombMinusFib,
        FibFamily::CombPlusFib,
    ];

    pub const fn id(self) -> &'static str {
        match self {
            FibFamily::SquareLucas => "fib.square.lucas",
            FibFamily::SquareFib => "fib.square.fib",
            FibFamily::EvenRLucas => "fib.even_r.lucas",
            FibFamily::EvenRFib => "fib.even_r.fib",
            FibFamily::GeneralLucas => "fib.general.lucas",
            FibFamily::GeneralFib => "fib.general.fib",
            FibFamily::CombMinusLucas => "fib.comb_minus.lucas",
            FibFamily::CombPlusLucas => "fib.comb_plus.lucas",
            FibFamily::CombMinusFib => "fib.comb_minus.fib",
            FibFamily::CombPlusFib => "fib.comb_plus.fib",
        }
    }

    pub fn from_id(id: &str) -> Option<FibFamily> {
        FibFamily::ALL.into_iter().find(|f| f.id() == id)
    }

    /// Whether the family is parametrized by an even r.
    pub fn uses_r(self) -> bool {
        !matches!(self, FibFamily::SquareLucas | FibFamily::SquareFib)
    }

    pub fn is_lucas(self) -> bool {
        matches!(
            self,
            FibFamily::SquareLucas
                | FibFamily::EvenRLucas
                | FibFamily::GeneralLucas
                | FibFamily::CombMinusLucas
                | FibFamily::CombPlusLucas
        )
    }
}

impl fmt::Display for FibFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FibIntegrandSpec {
    pub family: FibFamily,
    /// k, or m for the general families.
    pub n: u32,
    /// Even r ≥ 2; ignored by the square families.
    pub r: u32,
}

impl FibIntegrandSpec {
    pub fn new(family: FibFamily, n: u32, r: u32) -> Result<Self> {
        let spec = FibIntegrandSpec { family, n, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.family.uses_r() && (self.r < 2 || self.r % 2 != 0) {
            return Err(Error::InvalidParameter(format!(
                "{} needs an even r >= 2, got {}",
                self.family, self.r
            )));
        }
        Ok(())
    }

    /// Exponent 2r of the golden power a = α^{2r}.
    fn golden_exponent(&self) -> i64 {
        if self.family.uses_r() {
            2 * i64::from(self.r)
        } else {
            2
        }
    }
}

impl fmt::Display for FibIntegrandSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.family.uses_r() {
            write!(f, "{}(n={}, r={})", self.family, self.n, self.r)
        } else {
            write!(f, "{}(n={})", self.family, self.n)
        }
    }
}

fn table_for(spec: &FibIntegrandSpec) -> SequenceTable {
    let r = spec.r.max(1) as usize;
    let n = spec.n as usize;
    SequenceTable::new(2 * r * (2 * n + 3) + 4)
}

/// Σ_{j=0}^{n+1} C(n+1,j)·S_{e·j}·x^{n+1−j}, as coefficients of x⁰..x^{n+1}.
fn binomial_sum(table: &SequenceTable, n: u32, e: usize, lucas: bool) -> Vec<BigInt> {
    let seq = if lucas { &table.lucas } else { &table.fib };
    let n = n as usize;
    let mut coeffs = vec![BigInt::zero(); n + 2];
    for j in 0..=n + 1 {
        coeffs[n + 1 - j] = binomial(n as i64 + 1, j as i64) * &seq[e * j];
    }
    coeffs
}

fn shift(coeffs: &[BigInt], by: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); by];
    out.extend_from_slice(coeffs);
    out
}

fn to_rationals(coeffs: Vec<BigInt>) -> Vec<Rational> {
    coeffs.into_iter().map(big).collect()
}

/// Integer numerator coefficients, lowest power first.
pub fn build_numerator(spec: &FibIntegrandSpec) -> Result<Vec<BigInt>> {
    spec.validate()?;
    let table = table_for(spec);
    let lucas = spec.family.is_lucas();
    let n = spec.n;
    let e = 2 * spec.r as usize;
    Ok(match spec.family {
        FibFamily::SquareLucas | FibFamily::SquareFib => {
            // Σ C(k+1,j) S_{2(k+1−j)} xʲ
            let seq = if lucas { &table.lucas } else { &table.fib };
            (0..=n as usize + 1)
                .map(|j| binomial(i64::from(n) + 1, j as i64) * &seq[2 * (n as usize + 1 - j)])
                .collect()
        }
        FibFamily::EvenRLucas | FibFamily::EvenRFib => binomial_sum(&table, n, e, lucas),
        FibFamily::GeneralLucas | FibFamily::GeneralFib => {
            shift(&binomial_sum(&table, n, e, lucas), n as usize)
        }
        FibFamily::CombMinusLucas
        | FibFamily::CombPlusLucas
        | FibFamily::CombMinusFib
        | FibFamily::CombPlusFib => {
            let base = binomial_sum(&table, n, e, lucas);
            let minus = matches!(spec.family, FibFamily::CombMinusLucas | FibFamily::CombMinusFib);
            let mut out = shift(&base, n as usize);
            for (i, c) in base.iter().enumerate() {
                if minus {
                    out[i] -= c;
                } else {
                    out[i] += c;
                }
            }
            out
        }
    })
}

pub fn build_integrand(spec: &FibIntegrandSpec) -> Result<LogIntegrand> {
    let numerator = to_rationals(build_numerator(spec)?);
    let l = if spec.family.uses_r() {
        crate::exact::lucas(2 * u64::from(spec.r))
    } else {
        BigInt::from(3)
    };
    let l = crate::exact::to_f64(&big(l));
    LogIntegrand::new(numerator, true, vec![], vec![(l, spec.n + 1)])
}

fn s5() -> Sqrt5 {
    Sqrt5::sqrt5()
}

fn zi(value: &BigInt) -> Sqrt5 {
    Sqrt5::rational(big(value.clone()))
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// π² + 4r²ln²α
fn golden_square(r: i64) -> GoldenValue {
    GoldenValue::pi_squared(Sqrt5::one()) + GoldenValue::ln_alpha_squared(Sqrt5::integer(4 * r * r))
}

/// h·H + l·ln α for Q(√5) coefficients h, l and rational H.
fn h_ln(h: Sqrt5, harmonic: &Rational, l: Sqrt5) -> GoldenValue {
    GoldenValue::constant(h.scale(harmonic)) + GoldenValue::ln_alpha(l)
}

/// Right-hand side as displayed for each family.
pub fn build_rhs(spec: &FibIntegrandSpec) -> Result<GoldenValue> {
    spec.validate()?;
    let t = table_for(spec);
    let (fib, lucas, hn) = (&t.fib, &t.lucas, &t.harmonic);
    let n = i64::from(spec.n);
    let r = i64::from(spec.r);
    let ru = spec.r as usize;
    let nu = spec.n as usize;
    let lr = zi(&lucas[ru]);
    let lr_pow = |e: i64| lr.pow(e);
    let sum = |f: &dyn Fn(usize) -> GoldenValue| -> GoldenValue {
        (0..nu).fold(GoldenValue::zero(), |acc, j| acc + f(j))
    };
    Ok(match spec.family {
        FibFamily::SquareLucas => {
            let k = n;
            let par = if k % 2 == 1 { zi(&lucas[nu + 1]) * s5().pow(-1) } else { zi(&fib[nu + 1]) };
            let first = golden_square(1).scale(&(par * s5().pow(-k)).scale(&rat(1, 2)));
            let tail = sum(&|j| {
                let ji = j as i64;
                let idx = nu + 2 + j;
                let ap = golden_power(k + 2 + ji);
                let hw = zi(&lucas[idx]) + ap.scale(&int(sign(k - ji) - 1));
                let lw = (zi(&lucas[idx]) - ap.scale(&int(sign(k - ji) + 1))).scale(&int(-2));
                h_ln(hw, &hn[j], lw).scale(&s5().pow(ji).scale(&rat(sign(ji), ji + 1)))
            });
            first + tail.scale(&s5().pow(-k).scale(&int(sign(k))))
        }
        FibFamily::SquareFib => {
            let k = n;
            let par = if k % 2 == 1 { zi(&fib[nu + 1]) } else { zi(&lucas[nu + 1]) * s5().pow(-1) };
            let first = golden_square(1).scale(&(par * s5().pow(-(k + 1))).scale(&rat(1, 2)));
            let tail = sum(&|j| {
                let ji = j as i64;
                let idx = nu + 2 + j;
                let ap = golden_power(k + 2 + ji);
                let hw = zi(&lucas[idx]) - ap.scale(&int(sign(k - ji) + 1));
                let lw = (zi(&lucas[idx]) + ap.scale(&int(sign(k - ji) - 1))).scale(&int(-2));
                h_ln(hw, &hn[j], lw).scale(&s5().pow(ji).scale(&rat(sign(ji), ji + 1)))
            });
            first + tail.scale(&s5().pow(-(k + 1)).scale(&int(-sign(k))))
        }
        FibFamily::EvenRLucas | FibFamily::EvenRFib => {
            let k = n;
            let lead = if spec.family.is_lucas() { &lucas[ru * (nu + 1)] } else { &fib[ru * (nu + 1)] };
            let first = golden_square(r).scale(&(zi(lead) * lr_pow(-(k + 1))).scale(&rat(1, 2)));
            let tail = sum(&|j| {
                let idx = ru * (nu + 2 + j);
                let w = lr_pow(j as i64).scale(&rat(1, j as i64 + 1));
                let term = if spec.family.is_lucas() {
                    h_ln(zi(&lucas[idx]), &hn[j], zi(&fib[idx]) * s5().scale(&int(2 * r)))
                } else {
                    h_ln(zi(&fib[idx]), &hn[j], zi(&lucas[idx]) * s5().pow(-1).scale(&int(2 * r)))
                };
                term.scale(&w)
            });
            first + tail.scale(&lr_pow(-k))
        }
        FibFamily::GeneralLucas | FibFamily::GeneralFib => {
            let m = n;
            let lead = if spec.family.is_lucas() { &lucas[ru * (nu + 1)] } else { &fib[ru * (nu + 1)] };
            let first = golden_square(r).scale(&(zi(lead) * lr_pow(-(m + 1))).scale(&rat(1, 2)));
            let tail = sum(&|j| {
                let idx = ru * (nu - j);
                let w = lr_pow(j as i64).scale(&rat(1, j as i64 + 1));
                let term = if spec.family.is_lucas() {
                    h_ln(zi(&lucas[idx]), &hn[j], zi(&fib[idx]) * s5().scale(&int(-2 * r)))
                } else {
                    h_ln(zi(&fib[idx]), &hn[j], zi(&lucas[idx]) * s5().scale(&rat(-2 * r, 5)))
                };
                term.scale(&w)
            });
            first + tail.scale(&lr_pow(-m))
        }
        FibFamily::CombMinusLucas | FibFamily::CombMinusFib => {
            let k = n;
            // Σ L_r^j/(j+1)(F_{r(j+1)}H_j + (2√5/5)r ln α L_{r(j+1)})
            let inner = sum(&|j| {
                let idx = ru * (j + 1);
                let w = lr_pow(j as i64).scale(&rat(1, j as i64 + 1));
                h_ln(zi(&fib[idx]), &hn[j], zi(&lucas[idx]) * s5().scale(&rat(2 * r, 5))).scale(&w)
            });
            let lead = if spec.family.is_lucas() {
                zi(&fib[ru * (nu + 1)]).scale(&int(-5))
            } else {
                zi(&lucas[ru * (nu + 1)]).scale(&int(-1))
            };
            inner.scale(&(lead * lr_pow(-k)))
        }
        FibFamily::CombPlusLucas | FibFamily::CombPlusFib => {
            let k = n;
            let lead = if spec.family.is_lucas() { zi(&lucas[ru * (nu + 1)]) } else { zi(&fib[ru * (nu + 1)]) };
            let inner = sum(&|j| {
                let idx = ru * (j + 1);
                let w = lr_pow(j as i64).scale(&rat(1, j as i64 + 1));
                h_ln(zi(&lucas[idx]), &hn[j], zi(&fib[idx]) * s5().scale(&int(2 * r))).scale(&w)
            });
            golden_square(r).scale(&(lead.clone() * lr_pow(-(k + 1))))
                + inner.scale(&(lead * lr_pow(-k)))
        }
    })
}

/// Exact value of `expr` at a = αⁿ, using ln a = n·ln α.
pub fn evaluate_golden(expr: &LogPolyExpr, n: i64) -> Result<GoldenValue> {
    let a = golden_power(n);
    let a1 = &a + &Sqrt5::one();
    let mut total = GoldenValue::zero();
    for term in expr.terms() {
        let factor = a.pow(i64::from(term.pow_a)) * a1.pow(i64::from(term.pow_a1));
        let log = Rational::from_integer(BigInt::from(n)).pow(term.pow_log as i32);
        let c0 = factor.scale(&(&term.coeff.r0 * &log));
        let c1 = factor.scale(&(&term.coeff.r1 * &log));
        let piece = match term.pow_log {
            0 => GoldenValue::constant(c0) + GoldenValue::pi_squared(c1),
            1 | 2 if !term.coeff.r1.is_zero() => {
                return Err(Error::InvalidParameter(
                    "pi^2 * ln(a) terms have no slot in the golden basis".into(),
                ))
            }
            1 => GoldenValue::ln_alpha(c0),
            2 => GoldenValue::ln_alpha_squared(c0),
            p => {
                return Err(Error::InvalidParameter(format!(
                    "ln(a)^{p} has no slot in the golden basis"
                )))
            }
        };
        total = total + piece;
    }
    Ok(total)
}

/// Right-hand side re-derived by evaluating F(0,k,·) or F(m,0,·) at
/// a = α^{±2r} exactly and combining the two evaluations.
pub fn derive_rhs(spec: &FibIntegrandSpec) -> Result<GoldenValue> {
    spec.validate()?;
    let e = spec.golden_exponent();
    let pair = |expr: &LogPolyExpr, lucas: bool| -> Result<GoldenValue> {
        let at_a = evaluate_golden(expr, e)?;
        let at_b = evaluate_golden(expr, -e)?;
        Ok(if lucas {
            at_a + at_b
        } else {
            (at_b - at_a).scale(&s5().pow(-1))
        })
    };
    let lucas = spec.family.is_lucas();
    Ok(match spec.family {
        FibFamily::SquareLucas | FibFamily::SquareFib | FibFamily::EvenRLucas | FibFamily::EvenRFib => {
            pair(&closed_F0(spec.n), lucas)?
        }
        FibFamily::GeneralLucas | FibFamily::GeneralFib => pair(&closed_Fm0(spec.n), lucas)?,
        FibFamily::CombMinusLucas | FibFamily::CombMinusFib => {
            pair(&closed_Fm0(spec.n), lucas)? - pair(&closed_F0(spec.n), lucas)?
        }
        FibFamily::CombPlusLucas | FibFamily::CombPlusFib => {
            pair(&closed_Fm0(spec.n), lucas)? + pair(&closed_F0(spec.n), lucas)?
        }
    })
}

fn exact(value: f64) -> Result<Rational> {
    from_f64(value).ok_or_else(|| Error::InvalidParameter(format!("non-finite coefficient {value}")))
}

/// (sx+q) ln x/((x−1)(x²+3x+1)) and its value (s+q)(π²+4ln²α)/10.
pub fn affine_family_check(s: f64, q_: f64) -> Result<(LogIntegrand, GoldenValue)> {
    let (s, q_) = (exact(s)?, exact(q_)?);
    let integrand = LogIntegrand::new(vec![q_.clone(), s.clone()], true, vec![], vec![(3.0, 1)])?;
    let rhs = golden_square(1).scale_rational(&((s + q_) * rat(1, 10)));
    Ok((integrand, rhs))
}

/// (sx²+qx+r) ln x/(x²+3x+1)² and its value 2(s−r) ln α/√5.
pub fn affine_quadratic_check(s: f64, q_: f64, r: f64) -> Result<(LogIntegrand, GoldenValue)> {
    let (s, q_, r) = (exact(s)?, exact(q_)?, exact(r)?);
    let integrand = LogIntegrand::new(vec![r.clone(), q_, s.clone()], false, vec![], vec![(3.0, 2)])?;
    let rhs = GoldenValue::ln_alpha(s5().pow(-1).scale(&((s - r) * int(2))));
    Ok((integrand, rhs))
}

#[derive(Debug, Clone, PartialEq)]
pub struct GoldenBaseCase {
    pub id: &'static str,
    /// The integrand as displayed.
    pub display: &'static str,
    /// Integrand the oracle integrates. For the two cases whose quadratic has
    /// a positive root, the root cancels against the numerator and this is
    /// the reduced form 1/((x−1)(x+a)).
    pub integrand: LogIntegrand,
    pub rhs: GoldenValue,
}

/// The base identity specialized at a = α^{±2}, α and 1/α.
pub fn golden_base_specializations() -> Result<Vec<GoldenBaseCase>> {
    let quad = vec![(3.0, 1)];
    let over_quad = |numerator: Vec<Rational>| LogIntegrand::new(numerator, true, vec![], quad.clone());
    let tenth = golden_square(1).scale_rational(&rat(1, 10));
    // (π² + ln²α)/2 · α^{-p}
    let half_over_alpha = |p: i64| {
        let c = golden_power(-p).scale(&rat(1, 2));
        GoldenValue::pi_squared(c.clone()) + GoldenValue::ln_alpha_squared(c)
    };
    Ok(vec![
        GoldenBaseCase {
            id: "golden.quadratic.one",
            display: "ln(x)/((x-1)*(x^2+3*x+1))",
            integrand: over_quad(vec![int(1)])?,
            rhs: tenth.clone(),
        },
        GoldenBaseCase {
            id: "golden.quadratic.lucas_fifth",
            display: "(2*x+3)*ln(x)/(5*(x-1)*(x^2+3*x+1))",
            integrand: over_quad(vec![rat(3, 5), rat(2, 5)])?,
            rhs: tenth.clone(),
        },
        GoldenBaseCase {
            id: "golden.quadratic.x_plus_one",
            display: "(x+1)*ln(x)/((x-1)*(x^2+3*x+1))",
            integrand: over_quad(vec![int(1), int(1)])?,
            rhs: golden_square(1).scale_rational(&rat(1, 5)),
        },
        GoldenBaseCase {
            id: "golden.quadratic.x",
            display: "x*ln(x)/((x-1)*(x^2+3*x+1))",
            integrand: over_quad(vec![int(0), int(1)])?,
            rhs: tenth,
        },
        GoldenBaseCase {
            id: "golden.alpha",
            display: "(x+1-alpha)*ln(x)/((x^2+x-1)*(x-1))",
            integrand: LogIntegrand::new(vec![int(1)], true, vec![(ALPHA, 1)], vec![])?,
            rhs: half_over_alpha(2),
        },
        GoldenBaseCase {
            id: "golden.alpha_inverse",
            display: "(x-alpha)*ln(x)/((x^2-x-1)*(x-1))",
            integrand: LogIntegrand::new(vec![int(1)], true, vec![(ALPHA - 1.0, 1)], vec![])?,
            rhs: half_over_alpha(1),
        },
    ])
}
