use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{big, binomial, factorial, int, Rational};

/// k-th derivative in `a` of (a + c)/(a·x + 1)ˢ, from the closed form
///
/// (−1)ᵏ k! xᵏ⁻¹ (ax+1)^−(k+s) · ((a+c)·x·C(s+k−1, s−1) − (ax+1)·C(s+k−2, s−1)).
///
/// This sits outside the kernel because (ax+1) is not one of its two poles.
pub fn lemma_derivative(c: f64, s: u32, x: f64, k: u32, a: f64) -> Result<f64> {
    let base = a * x + 1.0;
    if base == 0.0 {
        return Err(Error::InvalidParameter("a*x + 1 must be nonzero".into()));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("s must be a positive integer".into()));
    }
    if k == 0 {
        return Ok((a + c) / base.powi(s as i32));
    }
    let (s_i, k_i) = (i64::from(s), i64::from(k));
    let c1 = binomial(s_i + k_i - 1, s_i - 1);
    let c2 = binomial(s_i + k_i - 2, s_i - 1);
    let c1 = crate::exact::to_f64(&big(c1));
    let c2 = crate::exact::to_f64(&big(c2));
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    let kf = crate::exact::to_f64(&big(factorial(k.into())));
    let inner = (a + c) * x * c1 - base * c2;
    Ok(sign * kf * x.powi(k as i32 - 1) * base.powi(-((k + s) as i32)) * inner)
}

/// The same closed form in exact arithmetic.
pub fn lemma_derivative_rational(
    c: &Rational,
    s: u32,
    x: &Rational,
    k: u32,
    a: &Rational,
) -> Result<Rational> {
    let base = a * x + Rational::one();
    if base.is_zero() {
        return Err(Error::InvalidParameter("a*x + 1 must be nonzero".into()));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("s must be a positive integer".into()));
    }
    if k == 0 {
        return Ok((a + c) / base.pow(s as i32));
    }
    let (s_i, k_i) = (i64::from(s), i64::from(k));
    let c1 = big(binomial(s_i + k_i - 1, s_i - 1));
    let c2 = big(binomial(s_i + k_i - 2, s_i - 1));
    let sign = if k % 2 == 0 { int(1) } else { int(-1) };
    let inner = (a + c) * x * c1 - &base * c2;
    Ok(sign * big(factorial(k.into())) * x.pow(k as i32 - 1) * base.pow(-((k + s) as i32)) * inner)
}

/// Central k-th difference of (a + c)/(a·x + 1)ˢ in exact arithmetic, with
/// one Richardson step. The step is 1/1000 of the distance from `a` to the
/// pole at −1/x (or 1/1000 when x = 0).
pub fn lemma_finite_difference(
    c: &Rational,
    s: u32,
    x: &Rational,
    k: u32,
    a: &Rational,
) -> Result<Rational> {
    let one = Rational::one();
    if (a * x + &one).is_zero() {
        return Err(Error::InvalidParameter("a*x + 1 must be nonzero".into()));
    }
    if s == 0 {
        return Err(Error::InvalidParameter("s must be a positive integer".into()));
    }
    let f = |t: &Rational| (t + c) / (t * x + &one).pow(s as i32);
    let diff = |h: &Rational| {
        let mut acc = Rational::zero();
        for i in 0..=k {
            let shift = (int(i64::from(k)) / int(2) - int(i64::from(i))) * h;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc += int(sign) * big(binomial(k.into(), i.into())) * f(&(a + shift));
        }
        acc / h.pow(k as i32)
    };
    let distance = if x.is_zero() {
        one.clone()
    } else {
        (a + x.recip()).abs()
    };
    let h = distance / int(1000);
    let coarse = diff(&h);
    let fine = diff(&(&h / int(2)));
    Ok((int(4) * fine - coarse) / int(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn zeroth_derivative_is_the_function() {
        let v = lemma_derivative(3.0, 2, 1.5, 0, 0.5).unwrap();
        assert!((v - 3.5 / 1.75f64.powi(2)).abs() < 1e-15);
    }

    #[test]
    fn pole_shift_special_case() {
        // c = 3, s = 2, x = 1 reduces to (−1)ᵏ k! (a+3+2k)/(a+1)^{k+2}
        assert!((lemma_derivative(3.0, 2, 1.0, 2, 1.0).unwrap() - 1.0).abs() < 1e-15);
        for k in 0..8u32 {
            for a in [rat(1, 3), rat(2, 1), rat(7, 4)] {
                let closed = lemma_derivative_rational(&int(3), 2, &int(1), k, &a).unwrap();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let expected = int(sign) * big(factorial(k.into())) * (&a + int(3) + int(2 * i64::from(k)))
                    / (&a + int(1)).pow(k as i32 + 2);
                assert_eq!(closed, expected);
            }
        }
    }

    #[test]
    fn third_derivative_matches_finite_differences() {
        let (c, s, x, k, a) = (int(0), 1, int(2), 3, rat(1, 2));
        let closed = lemma_derivative_rational(&c, s, &x, k, &a).unwrap();
        let fd = lemma_finite_difference(&c, s, &x, k, &a).unwrap();
        let rel = crate::exact::to_f64(&((&closed - &fd) / &closed));
        assert!(rel.abs() < 1e-5, "rel {rel}");
        let float = lemma_derivative(0.0, 1, 2.0, 3, 0.5).unwrap();
        assert!((float - crate::exact::to_f64(&closed)).abs() < 1e-13);
    }

    #[test]
    fn rejects_singular_base() {
        assert!(lemma_derivative(1.0, 2, 2.0, 1, -0.5).is_err());
        assert!(lemma_derivative(1.0, 0, 2.0, 1, 0.5).is_err());
    }
}
