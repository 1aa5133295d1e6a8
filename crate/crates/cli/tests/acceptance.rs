//! Acceptance suite. One line per criterion; exits non-zero if any fails.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logint_core::closed::{
    base_integral, binom_weighted_identity, closed_F0, closed_F1, closed_F2, closed_F_general,
    closed_F_general_alt, closed_Fm0, compare_forms, dk_pi2_ln2, errors, ln_power_integral,
    ln_power_integrand, within_tolerance, EqualityLevel,
};
use logint_core::constants::{ALPHA, LN_ALPHA, PI_SQUARED, SQRT5};
use logint_core::exact::{big, factorial, from_f64, harmonic, rat, to_f64, Rational};
use logint_core::fib::{build_integrand, build_rhs, derive_rhs, FibFamily, FibIntegrandSpec};
use logint_core::harness::GridConfig;
use logint_core::logpoly::{lemma_derivative, lemma_finite_difference, LogPolyExpr, LogTerm, Pi2Coeff};
use logint_core::quad::{integrate, LogIntegrand};

struct Outcome {
    pass: bool,
    detail: String,
}

/// Worst relative error seen, plus every failure.
#[derive(Default)]
struct Tally {
    count: usize,
    max_rel: f64,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, label: impl FnOnce() -> String, lhs: f64, rhs: f64, tol: f64) {
        self.count += 1;
        let (_, rel) = errors(lhs, rhs);
        self.max_rel = self.max_rel.max(rel);
        if !within_tolerance(lhs, rhs, tol) {
            self.failures.push(format!("{} lhs={lhs:e} rhs={rhs:e}", label()));
        }
    }

    fn check(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(label());
        }
    }

    fn finish(self, extra: &str) -> Outcome {
        let first = self.failures.first().map(|f| format!("; first failure: {f}")).unwrap_or_default();
        Outcome {
            pass: self.failures.is_empty(),
            detail: format!(
                "{} checks, {} failed, max rel err {:.2e}{extra}{first}",
                self.count,
                self.failures.len(),
                self.max_rel
            ),
        }
    }
}

fn quad(f: &LogIntegrand, tol: f64) -> f64 {
    match integrate(f, (tol * 1e-3).max(1e-13)) {
        Ok(r) => r.value,
        Err(e) => panic!("quadrature of {f} failed: {e}"),
    }
}

fn timed(limit: Duration, run: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = run();
    let elapsed = start.elapsed();
    o.detail.push_str(&format!(", {:.2}s", elapsed.as_secs_f64()));
    if elapsed > limit {
        o.pass = false;
        o.detail.push_str(&format!(" (limit {}s)", limit.as_secs()));
    }
    o
}

fn base_identity() -> Outcome {
    timed(Duration::from_secs(5), || {
        let mut t = Tally::default();
        for a in [0.25, 0.5, 1.0, ALPHA, ALPHA * ALPHA, 3.0, 10.0] {
            let expected = (PI_SQUARED + a.ln().powi(2)) / (2.0 * (a + 1.0));
            let q = quad(&LogIntegrand::family(0, 0, a).unwrap(), 1e-10);
            t.record(|| format!("a={a}"), q, expected, 1e-10);
            t.record(|| format!("kernel form a={a}"), base_integral().evaluate(a).unwrap(), expected, 1e-14);
        }
        t.finish("")
    })
}

fn golden_constants() -> Outcome {
    let over_quadratic = |numerator: &[i64], power: u32| {
        let numerator = numerator.iter().map(|&c| rat(c, 1)).collect();
        LogIntegrand::new(numerator, true, vec![], vec![(3.0, power)]).unwrap()
    };
    let l2 = LN_ALPHA * LN_ALPHA;
    let values = [
        PI_SQUARED / 2.0 + 2.0 * l2,
        PI_SQUARED / 10.0 + 0.4 * l2,
        0.3 * PI_SQUARED + 1.2 * l2 + 8.0 / SQRT5 * LN_ALPHA,
        PI_SQUARED / 10.0 + 0.4 * l2 + 4.0 / SQRT5 * LN_ALPHA,
    ];
    let integrands = [
        ("(2x+3)/(x^2+3x+1)", over_quadratic(&[3, 2], 1)),
        ("1/(x^2+3x+1)", over_quadratic(&[1], 1)),
        ("(2x^2+6x+7)/(x^2+3x+1)^2", over_quadratic(&[7, 6, 2], 2)),
        ("(2x+3)/(x^2+3x+1)^2", over_quadratic(&[3, 2], 2)),
    ];
    let mut t = Tally::default();
    for ((label, f), expected) in integrands.iter().zip(values) {
        t.record(|| label.to_string(), quad(f, 1e-9), expected, 1e-9);
    }
    // the first three are the Fibonacci builders at k = 0, 1
    for (family, n, expected) in [
        (FibFamily::SquareLucas, 0, values[0]),
        (FibFamily::SquareFib, 0, values[1]),
        (FibFamily::SquareLucas, 1, values[2]),
    ] {
        let rhs = build_rhs(&FibIntegrandSpec::new(family, n, 0).unwrap()).unwrap();
        t.record(|| format!("{} n={n}", family.id()), rhs.to_f64(), expected, 1e-14);
    }
    t.finish("")
}

fn theorem_grid() -> Outcome {
    timed(Duration::from_secs(60), || {
        let grid = GridConfig::default();
        let mut t = Tally::default();
        for m in 0..=4 {
            for k in 0..=6 {
                let e = closed_F_general(m, k);
                for &a in &grid.a {
                    let q = quad(&LogIntegrand::family(m, k, a).unwrap(), 1e-9);
                    t.record(|| format!("m={m} k={k} a={a}"), q, e.evaluate(a).unwrap(), 1e-9);
                }
            }
        }
        t.finish("")
    })
}

fn cross_consistency() -> Outcome {
    let mut t = Tally::default();
    let mut structural = 0;
    let mut compare = |t: &mut Tally, label: String, lhs: &LogPolyExpr, rhs: &LogPolyExpr| {
        let c = compare_forms(lhs, rhs).unwrap();
        t.max_rel = t.max_rel.max(c.max_rel_err);
        structural += usize::from(c.level == Some(EqualityLevel::Structural));
        t.check(c.agrees(), || format!("{label}: rel {:e}", c.max_rel_err));
    };
    let special: [fn(u32) -> LogPolyExpr; 3] = [closed_F0, closed_F1, closed_F2];
    for (m, f) in (0u32..).zip(special) {
        for k in 0..=6 {
            let s = f(k);
            compare(&mut t, format!("F{m} vs general, k={k}"), &s, &closed_F_general(m, k));
            compare(&mut t, format!("F{m} vs alt, k={k}"), &s, &closed_F_general_alt(m, k));
        }
    }
    for m in 0..=4 {
        for k in 0..=6 {
            let label = format!("general vs alt, m={m} k={k}");
            compare(&mut t, label, &closed_F_general(m, k), &closed_F_general_alt(m, k));
        }
        compare(&mut t, format!("F(m,0) form, m={m}"), &closed_Fm0(m), &closed_F_general(m, 0));
    }
    t.finish(&format!(", {structural} structural"))
}

fn derivative_machinery() -> Outcome {
    let mut t = Tally::default();
    let pi2_ln2 = LogPolyExpr::pi_squared() + LogPolyExpr::ln_pow(2);
    for k in 1..=12u32 {
        // 2(−1)ᵏ(k−1)! a⁻ᵏ (H_{k−1} − ln a), term by term
        let scale = big(factorial(u64::from(k - 1))) * rat(if k % 2 == 0 { 2 } else { -2 }, 1);
        let pow_a = -(k as i32);
        let expected = LogPolyExpr::from_terms([
            LogTerm { coeff: Pi2Coeff::rational(harmonic(u64::from(k - 1)) * &scale), pow_a, pow_a1: 0, pow_log: 0 },
            LogTerm { coeff: Pi2Coeff::rational(-scale), pow_a, pow_a1: 0, pow_log: 1 },
        ]);
        let d = pi2_ln2.differentiate(k);
        t.check(d == expected && dk_pi2_ln2(k).unwrap() == expected, || format!("k={k}: {d}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dyadic = |rng: &mut ChaCha8Rng, lo: f64, hi: f64| (rng.gen_range(lo..hi) * 32.0).round() / 32.0;
    let exact = |v: f64| -> Rational { from_f64(v).unwrap() };
    for _ in 0..30 {
        let c = dyadic(&mut rng, -2.0, 2.0);
        let s = rng.gen_range(1..=4u32);
        let x = dyadic(&mut rng, 0.1, 3.0);
        let k = rng.gen_range(0..=6u32);
        let a = dyadic(&mut rng, 0.1, 3.0);
        let fd = to_f64(&lemma_finite_difference(&exact(c), s, &exact(x), k, &exact(a)).unwrap());
        let closed = lemma_derivative(c, s, x, k, a).unwrap();
        t.record(|| format!("c={c} s={s} x={x} k={k} a={a}"), closed, fd, 1e-5);
    }
    t.finish("")
}

fn ln_power_and_binomial() -> Outcome {
    let grid = GridConfig::default();
    let mut t = Tally::default();
    // k = 0 diverges; m < 2 or k = 0 is outside the binomial identity
    for k in 1..=8 {
        let e = ln_power_integral(k).unwrap();
        for &a in &grid.a {
            let q = quad(&ln_power_integrand(k, a).unwrap(), 1e-9);
            t.record(|| format!("ln power k={k} a={a}"), q, e.evaluate(a).unwrap(), 1e-9);
        }
    }
    for m in 2..=5 {
        for k in 1..=5 {
            for &a in &grid.a {
                let (f, rhs) = binom_weighted_identity(m, k, a).unwrap();
                t.record(|| format!("binomial m={m} k={k} a={a}"), quad(&f, 1e-9), rhs, 1e-9);
            }
        }
    }
    t.finish("")
}

fn fibonacci() -> Outcome {
    let mut t = Tally::default();
    for family in FibFamily::ALL {
        let rs: &[u32] = if family.uses_r() { &[2, 4] } else { &[0] };
        for &r in rs {
            for n in 0..=3 {
                let spec = FibIntegrandSpec::new(family, n, r).unwrap();
                let f = build_integrand(&spec).unwrap();
                let rhs = build_rhs(&spec).unwrap().to_f64();
                t.record(|| format!("{} n={n} r={r}", family.id()), quad(&f, 1e-8), rhs, 1e-8);
            }
        }
    }
    let mut exact = 0;
    for family in [FibFamily::SquareLucas, FibFamily::SquareFib] {
        for n in 0..=6 {
            let spec = FibIntegrandSpec::new(family, n, 0).unwrap();
            exact += 1;
            t.check(build_rhs(&spec).unwrap() == derive_rhs(&spec).unwrap(), || {
                format!("{} n={n}: printed right-hand side differs from re-derivation", family.id())
            });
        }
    }
    t.finish(&format!(", {exact} of them exact re-derivations"))
}

fn random_expr(rng: &mut ChaCha8Rng) -> LogPolyExpr {
    let n = rng.gen_range(0..=8);
    let terms: Vec<LogTerm> = (0..n)
        .map(|_| {
            let r0 = rat(rng.gen_range(-20..=20), rng.gen_range(1..=6));
            let r1 = if rng.gen_bool(0.5) { rat(rng.gen_range(-20..=20), rng.gen_range(1..=6)) } else { rat(0, 1) };
            LogTerm {
                coeff: Pi2Coeff::new(r0, r1),
                pow_a: rng.gen_range(-6..=6),
                pow_a1: rng.gen_range(-6..=6),
                pow_log: rng.gen_range(0..=3),
            }
        })
        .collect();
    LogPolyExpr::from_terms(terms)
}

fn kernel_properties() -> Outcome {
    const ROUNDS: usize = 300;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut t = Tally::default();
    let mut skipped = 0;
    for i in 0..ROUNDS {
        let (e1, e2) = (random_expr(&mut rng), random_expr(&mut rng));
        let (m, n) = (rng.gen_range(0..4u32), rng.gen_range(0..4u32));
        t.check((&e1 + &e2).differentiate(n) == e1.differentiate(n) + e2.differentiate(n), || {
            format!("linearity #{i}")
        });
        t.check(e1.differentiate(m + n) == e1.differentiate(m).differentiate(n), || format!("composition #{i}"));
        t.check(e1.substitute_reciprocal().substitute_reciprocal() == e1, || format!("involution #{i}"));

        let a = [0.5, 1.3, 2.7][i % 3];
        let h = 1e-6;
        let exact = e2.differentiate(1).evaluate(a).unwrap();
        let fd = (e2.evaluate(a + h).unwrap() - e2.evaluate(a - h).unwrap()) / (2.0 * h);
        // the difference quotient carries ~eps·|e|/h of rounding noise
        let noise = 1e-16 * e2.magnitude(a).unwrap() / h;
        if exact.abs() * 1e-5 > 10.0 * noise {
            t.record(|| format!("finite difference #{i}"), fd, exact, 1e-5);
        } else {
            skipped += 1;
        }
    }
    let checked = t.count;
    let mut o = t.finish(&format!(", {skipped} ill-conditioned finite differences skipped"));
    if checked < 1000 {
        o.pass = false;
        o.detail.push_str(" (fewer than 1000 checked)");
    }
    o
}

fn verify_report() -> serde_json::Value {
    let out = Command::new(env!("CARGO_BIN_EXE_logint"))
        .args(["verify", "--suite", "all"])
        .output()
        .expect("spawn logint");
    assert!(out.status.success(), "verify failed: {}", String::from_utf8_lossy(&out.stderr));
    let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("report is JSON");
    v.as_object_mut().expect("report is an object").remove("timing");
    v
}

fn determinism() -> Outcome {
    let (first, second) = (verify_report(), verify_report());
    let total = first["summary"]["total"].clone();
    let (first, second) = (first.to_string(), second.to_string());
    Outcome {
        pass: first == second,
        detail: format!("{total} cases, {} bytes without timing", first.len()),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("base identity", base_identity),
        ("golden constants", golden_constants),
        ("theorem grid", theorem_grid),
        ("cross-theorem consistency", cross_consistency),
        ("derivative machinery", derivative_machinery),
        ("ln-power and binomial", ln_power_and_binomial),
        ("fibonacci suite", fibonacci),
        ("kernel properties", kernel_properties),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        failed += usize::from(!o.pass);
        println!("{} criterion {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
