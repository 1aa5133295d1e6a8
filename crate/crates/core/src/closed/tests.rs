use super::*;
use crate::constants::{ALPHA, PI_SQUARED};
use crate::quad::integrate;

fn p() -> LogPolyExpr {
    pi2_ln2()
}

fn num(x: i64) -> LogPolyExpr {
    LogPolyExpr::integer(x)
}

fn close(x: f64, y: f64, tol: f64) -> bool {
    within_tolerance(x, y, tol)
}

#[test]
fn base_values() {
    let b = base_integral();
    assert!((b.evaluate(1.0).unwrap() - PI_SQUARED / 4.0).abs() < 1e-15);
    let two = (PI_SQUARED + 2f64.ln().powi(2)) / 6.0;
    assert!((b.evaluate(2.0).unwrap() - two).abs() < 1e-15);
    assert!((two - 1.725_009_5).abs() < 1e-7);
    // a = α²: α²+1 = √5α
    let a2 = ALPHA * ALPHA;
    let want = (PI_SQUARED + 4.0 * ALPHA.ln().powi(2)) / (2.0 * 5f64.sqrt() * ALPHA);
    assert!(close(b.evaluate(a2).unwrap(), want, 1e-14));
}

#[test]
fn f0_low_order_displays() {
    assert_eq!(closed_F0(0), base_integral());
    // Denominator 2a(a+1)²; with 2a²(a+1)² the value halves.
    let k1 = (a(1) * p() - num(2) * a1(1) * ln()) * a(-1) * a1(-2);
    assert_eq!(closed_F0(1), k1.scale(&rat(1, 2)));
    let q = integrate(&LogIntegrand::family(0, 1, 2.0).unwrap(), 1e-12).unwrap();
    assert!(close(closed_F0(1).evaluate(2.0).unwrap(), q.value, 1e-9));
    assert!((q.value - 0.459_478_659_629_318).abs() < 1e-12);
    let k2 = (a(2) * p() - a1(1) * (num(3) * a(1) + num(1)) * ln() + a1(2)) * a(-2) * a1(-3);
    assert_eq!(closed_F0(2), k2.scale(&rat(1, 2)));
}

#[test]
fn f1_low_order_displays() {
    assert_eq!(closed_F1(0), p().scale(&rat(1, 2)) * a1(-2) + ln() * a1(-1));
    let k1 = (a(1) * p() + (a(2) - num(1)) * ln() - a1(2)) * a(-1) * a1(-3);
    assert_eq!(closed_F1(1), k1.scale(&rat(1, 2)));
    let k2 = (num(3) * a(2) * p()
        + a1(1) * (num(2) * a(2) - num(5) * a(1) - num(1)) * ln()
        - num(3) * a(1) * a1(2))
        * a(-2)
        * a1(-4);
    assert_eq!(closed_F1(2), k2.scale(&rat(1, 6)));
}

#[test]
fn f2_k0_display() {
    let want = p().scale(&rat(1, 2)) * a1(-3)
        + (a(1) + num(3)) * ln() * a1(-2).scale(&rat(1, 2))
        + a1(-1).scale(&rat(1, 2));
    assert_eq!(closed_F2(0), want);
    let at_one = closed_F2(0).evaluate(1.0).unwrap();
    assert!((at_one - (PI_SQUARED / 16.0 + 0.25)).abs() < 1e-15);
}

#[test]
fn f2_k1_matches_quadrature() {
    let q = integrate(&LogIntegrand::family(2, 1, 2.0).unwrap(), 1e-12).unwrap();
    assert!(close(closed_F2(1).evaluate(2.0).unwrap(), q.value, 1e-9));
}

#[test]
fn derivative_formula() {
    assert!(dk_pi2_ln2(0).is_err());
    assert_eq!(dk_pi2_ln2(1).unwrap(), (ln() * a(-1)).scale_int(2));
    assert_eq!(dk_pi2_ln2(2).unwrap(), ((num(1) - ln()) * a(-2)).scale_int(2));
    for k in 1..=12 {
        assert_eq!(p().differentiate(k), dk_pi2_ln2(k).unwrap(), "k={k}");
    }
}

#[test]
fn general_reduces_to_f0() {
    for k in 0..=10 {
        let cmp = compare_forms(&closed_F_general(0, k), &closed_F0(k)).unwrap();
        assert!(cmp.agrees(), "k={k}: {cmp:?}");
    }
}

#[test]
fn general_k0_display() {
    for m in 0..=8 {
        assert_eq!(closed_F_general(m, 0), closed_Fm0(m), "m={m}");
    }
}

#[test]
fn alt_examples() {
    assert_eq!(closed_F_general_alt(0, 0), base_integral());
    assert_eq!(closed_F_general_alt(2, 0), closed_F2(0));
    let x = closed_F_general_alt(1, 2).evaluate(1.7).unwrap();
    let y = closed_F_general(1, 2).evaluate(1.7).unwrap();
    assert!(close(x, y, 1e-12));
}

#[test]
fn cross_theorem_grid() {
    for k in 0..=6 {
        let specialized = [closed_F0(k), closed_F1(k), closed_F2(k)];
        for (m, s) in specialized.iter().enumerate() {
            let general = closed_F_general(m as u32, k);
            let alt = closed_F_general_alt(m as u32, k);
            for other in [&general, &alt] {
                let cmp = compare_forms(s, other).unwrap();
                assert!(cmp.agrees(), "m={m} k={k}: {cmp:?}");
            }
        }
    }
    for m in 3..=5 {
        for k in 0..=6 {
            let cmp = compare_forms(&closed_F_general(m, k), &closed_F_general_alt(m, k)).unwrap();
            assert!(cmp.agrees(), "m={m} k={k}: {cmp:?}");
        }
    }
}

#[test]
fn log_power_at_most_two() {
    for m in 0..=4 {
        for k in 0..=6 {
            for e in [closed_F_general(m, k), closed_F_general_alt(m, k)] {
                assert!(e.max_log_power().unwrap_or(0) <= 2);
            }
        }
    }
    for k in 0..=6 {
        for e in [closed_F0(k), closed_F1(k), closed_F2(k), reciprocal_helper(k)] {
            assert!(e.max_log_power().unwrap_or(0) <= 2);
        }
    }
}

#[test]
fn quadrature_agreement_sample() {
    for (m, k, a) in [(0, 3, 0.25), (1, 4, 10.0), (3, 2, 1.618034), (4, 6, 0.5), (2, 5, 3.0)] {
        let q = integrate(&LogIntegrand::family(m, k, a).unwrap(), 1e-12).unwrap();
        let v = closed_F_general(m, k).evaluate(a).unwrap();
        assert!(close(v, q.value, 1e-9), "m={m} k={k} a={a}: {v} vs {}", q.value);
    }
}

#[test]
fn reciprocal_helper_matches_quadrature_and_substitution() {
    for k in 0..=4 {
        for a in [0.3, 2.0] {
            let q = integrate(&reciprocal_helper_integrand(k, a).unwrap(), 1e-12).unwrap();
            let v = reciprocal_helper(k).evaluate(a).unwrap();
            assert!(close(v, q.value, 1e-9), "k={k} a={a}");
            // F(0,k,1/a) = a^{k+1} × helper
            let via = closed_F0(k).substitute_reciprocal() * LogPolyExpr::a_pow(-(k as i32 + 1));
            assert!(close(via.evaluate(a).unwrap(), v, 1e-12), "k={k} a={a}");
        }
    }
}

#[test]
fn ln_power_examples() {
    assert!(ln_power_integral(0).is_err());
    assert_eq!(ln_power_integral(1).unwrap().evaluate(1.0).unwrap(), 0.0);
    assert_eq!(ln_power_integral(2).unwrap().evaluate(1.0).unwrap(), -0.5);
    let v = ln_power_integral(3).unwrap().evaluate(2.0).unwrap();
    assert!((v - (2f64.ln() - 1.5) / 24.0).abs() < 1e-16);
    for k in [2, 5] {
        let q = integrate(&ln_power_integrand(k, 0.7).unwrap(), 1e-12).unwrap();
        assert!(close(ln_power_integral(k).unwrap().evaluate(0.7).unwrap(), q.value, 1e-9));
    }
}

#[test]
fn binom_weighted_examples() {
    assert_eq!(binom_weighted_identity(2, 1, 1.0).unwrap().1, 1.0);
    assert_eq!(binom_weighted_identity(3, 2, 2.0).unwrap().1, 1.0 / 16.0);
    assert!((binom_weighted_identity(2, 3, 0.5).unwrap().1 - 2.0 / 3.0).abs() < 1e-16);
    assert!(binom_weighted_identity(1, 1, 1.0).is_err());
    for (m, k, a) in [(3, 2, 2.0), (2, 3, 0.5), (5, 4, 1.3)] {
        let (f, rhs) = binom_weighted_identity(m, k, a).unwrap();
        let q = integrate(&f, 1e-12).unwrap();
        assert!(close(q.value, rhs, 1e-9), "m={m} k={k} a={a}");
    }
}

#[test]
fn geometric_identities() {
    let (minus, _) = geometric_numerator_identity(1).unwrap();
    assert_eq!(minus.evaluate(1.0).unwrap(), 0.0);
    for k in 1..=5 {
        let (minus, plus) = geometric_numerator_identity(k).unwrap();
        let f0 = closed_F0(k);
        let fk0 = closed_F_general(k, 0);
        assert!(compare_forms(&minus, &(&fk0 - &f0)).unwrap().agrees(), "k={k}");
        assert!(compare_forms(&plus, &(&fk0 + &f0)).unwrap().agrees(), "k={k}");
        let q = integrate(&partial_sum_integrand(k, 2.0).unwrap(), 1e-12).unwrap();
        assert!(close(minus.evaluate(2.0).unwrap(), q.value, 1e-9), "k={k}");
    }
    let (minus, plus) = geometric_numerator_identity(2).unwrap();
    let q = integrate(&geometric_integrand(2, 2.0, -1).unwrap(), 1e-12).unwrap();
    assert!(close(minus.evaluate(2.0).unwrap(), q.value, 1e-9));
    let reduced = LogIntegrand::new(vec![int(1), int(1)], false, vec![(2.0, 3)], vec![]).unwrap();
    assert!(close(integrate(&reduced, 1e-12).unwrap().value, q.value, 1e-9));
    let q = integrate(&geometric_integrand(2, 2.0, 1).unwrap(), 1e-12).unwrap();
    assert!(close(plus.evaluate(2.0).unwrap(), q.value, 1e-9));
}

#[test]
fn comparison_levels() {
    let x = closed_F0(2);
    assert_eq!(compare_forms(&x, &x).unwrap().level, Some(EqualityLevel::Structural));
    let shifted = &x + &LogPolyExpr::rational(rat(1, 1000));
    assert_eq!(compare_forms(&x, &shifted).unwrap().level, None);
    assert!(within_tolerance(1e-13, 0.0, 1e-9));
    assert!(!within_tolerance(1e-11, 0.0, 1e-9));
}
