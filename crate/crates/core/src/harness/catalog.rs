use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, GridConfig, IdentityCase, LhsSource, ParamValue, Parameters, Rhs, RhsSource, Suite, FIB_TOLERANCE};
use crate::closed::*;
use crate::error::Result;
use crate::exact::{fib_sum_factorization, from_f64, SumKind};
use crate::fib::{
    affine_family_check, affine_quadratic_check, build_integrand, build_rhs, derive_rhs,
    golden_base_specializations, FibFamily, FibIntegrandSpec,
};
use crate::logpoly::LogPolyExpr;
use crate::quad::LogIntegrand;

pub struct IdentityEntry {
    pub id: &'static str,
    pub suite: Suite,
    pub description: &'static str,
    pub lhs_source: LhsSource,
    pub rhs_source: RhsSource,
    pub expand: fn(&GridConfig) -> Result<Vec<IdentityCase>>,
}

fn int(v: impl Into<i64>) -> ParamValue {
    ParamValue::Int(v.into())
}

fn real(v: f64) -> ParamValue {
    ParamValue::Real(v)
}

fn params<const N: usize>(pairs: [(&str, ParamValue); N]) -> Parameters {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn entry(id: &'static str) -> &'static IdentityEntry {
    catalog().iter().find(|e| e.id == id).expect("catalog id")
}

fn case(id: &'static str, parameters: Parameters, check: Check) -> IdentityCase {
    let e = entry(id);
    IdentityCase {
        identity_id: e.id,
        parameters,
        lhs_source: e.lhs_source,
        rhs_source: e.rhs_source,
        check,
    }
}

fn quad_expr(integrand: LogIntegrand, expr: &LogPolyExpr, a: f64) -> Check {
    Check::Quadrature { integrand, rhs: Rhs::Expr(expr.clone(), a), floor: 0.0 }
}

/// Quadrature against `expr(k)` for each k in `ks` and a in the grid.
fn k_by_a(
    id: &'static str,
    grid: &GridConfig,
    ks: impl Iterator<Item = u32>,
    expr: impl Fn(u32) -> Result<LogPolyExpr>,
    integrand: impl Fn(u32, f64) -> Result<LogIntegrand>,
) -> Result<Vec<IdentityCase>> {
    let mut out = Vec::new();
    for k in ks {
        let e = expr(k)?;
        for &a in &grid.a {
            let p = params([("k", int(k)), ("a", real(a))]);
            out.push(case(id, p, quad_expr(integrand(k, a)?, &e, a)));
        }
    }
    Ok(out)
}

fn forms_over_k(
    id: &'static str,
    ks: impl Iterator<Item = u32>,
    pair: impl Fn(u32) -> Result<(LogPolyExpr, LogPolyExpr)>,
) -> Result<Vec<IdentityCase>> {
    ks.map(|k| {
        let (lhs, rhs) = pair(k)?;
        Ok(case(id, params([("k", int(k))]), Check::Forms { lhs, rhs }))
    })
    .collect()
}

fn fixed_m(
    id: &'static str,
    m: u32,
    grid: &GridConfig,
    builder: fn(u32) -> LogPolyExpr,
) -> Result<Vec<IdentityCase>> {
    let mut out = Vec::new();
    for k in 0..=grid.k_max {
        let e = builder(k);
        for &a in &grid.a {
            let p = params([("m", int(m)), ("k", int(k)), ("a", real(a))]);
            out.push(case(id, p, quad_expr(LogIntegrand::family(m, k, a)?, &e, a)));
        }
    }
    Ok(out)
}

fn cross(
    id: &'static str,
    m: u32,
    grid: &GridConfig,
    lhs: fn(u32) -> LogPolyExpr,
    rhs: fn(u32, u32) -> LogPolyExpr,
) -> Result<Vec<IdentityCase>> {
    Ok((0..=grid.k_max)
        .map(|k| {
            let p = params([("m", int(m)), ("k", int(k))]);
            case(id, p, Check::Forms { lhs: lhs(k), rhs: rhs(m, k) })
        })
        .collect())
}

fn fib_family(family: FibFamily, grid: &GridConfig) -> Result<Vec<IdentityCase>> {
    let rs: Vec<u32> = if family.uses_r() { grid.r.clone() } else { vec![0] };
    let mut out = Vec::new();
    for r in rs {
        for n in 0..=grid.fib_n_max {
            let spec = FibIntegrandSpec::new(family, n, r)?;
            let mut p = params([("n", int(n))]);
            if family.uses_r() {
                p.insert("r".into(), int(r));
            }
            let check = Check::Quadrature {
                integrand: build_integrand(&spec)?,
                rhs: Rhs::Golden(build_rhs(&spec)?),
                floor: FIB_TOLERANCE,
            };
            out.push(case(family.id(), p, check));
        }
    }
    Ok(out)
}

macro_rules! fib_entry {
    ($family:expr, $desc:expr) => {
        IdentityEntry {
            id: $family.id(),
            suite: Suite::Fib,
            description: $desc,
            lhs_source: LhsSource::Quadrature,
            rhs_source: RhsSource::GoldenValue,
            expand: |g| fib_family($family, g),
        }
    };
}

const QUAD: (LhsSource, RhsSource) = (LhsSource::Quadrature, RhsSource::ExactExpression);
const FORMS: (LhsSource, RhsSource) = (LhsSource::ExactExpression, RhsSource::ExactExpression);

macro_rules! e {
    ($id:expr, $suite:expr, $sources:expr, $desc:expr, $expand:expr) => {
        IdentityEntry {
            id: $id,
            suite: $suite,
            description: $desc,
            lhs_source: $sources.0,
            rhs_source: $sources.1,
            expand: $expand,
        }
    };
}

static CATALOG: [IdentityEntry; 39] = [
    e!("base.log_integral", Suite::Core, QUAD, "ln x/((x-1)(x+a)) = (pi^2+ln^2 a)/(2(a+1))", |g| {
        k_by_a("base.log_integral", g, 0..=0, |_| Ok(base_integral()), |_, a| LogIntegrand::family(0, 0, a))
    }),
    e!("f0.closed_form", Suite::Core, QUAD, "F(0,k,a) closed form", |g| fixed_m("f0.closed_form", 0, g, closed_F0)),
    e!("f1.closed_form", Suite::Core, QUAD, "F(1,k,a) closed form", |g| fixed_m("f1.closed_form", 1, g, closed_F1)),
    e!("f2.closed_form", Suite::Core, QUAD, "F(2,k,a) closed form", |g| fixed_m("f2.closed_form", 2, g, closed_F2)),
    e!("general.closed_form", Suite::Core, QUAD, "F(m,k,a) with derivative blocks in 1/a", |g| {
        let mut out = Vec::new();
        for m in 0..=g.m_max {
            for k in 0..=g.k_max {
                let e = closed_F_general(m, k);
                for &a in &g.a {
                    let p = params([("m", int(m)), ("k", int(k)), ("a", real(a))]);
                    out.push(case("general.closed_form", p, quad_expr(LogIntegrand::family(m, k, a)?, &e, a)));
                }
            }
        }
        Ok(out)
    }),
    e!("general.fm0_closed_form", Suite::Core, QUAD, "F(m,0,a) simplified form", |g| {
        let mut out = Vec::new();
        for m in 0..=g.m_max {
            let e = closed_Fm0(m);
            for &a in &g.a {
                let p = params([("m", int(m)), ("a", real(a))]);
                out.push(case("general.fm0_closed_form", p, quad_expr(LogIntegrand::family(m, 0, a)?, &e, a)));
            }
        }
        Ok(out)
    }),
    e!("general.reciprocal_helper", Suite::Core, QUAD, "ln x/((x-1)(ax+1)^(k+1))", |g| {
        k_by_a("general.reciprocal_helper", g, 0..=g.k_max, |k| Ok(reciprocal_helper(k)), reciprocal_helper_integrand)
    }),
    e!("ln_power.closed_form", Suite::Core, QUAD, "ln x/(x+a)^(k+1) = (ln a - H_(k-1))/(k a^k)", |g| {
        k_by_a("ln_power.closed_form", g, 1..=g.ln_power_k_max, ln_power_integral, ln_power_integrand)
    }),
    e!("binomial_weighted", Suite::Core, (LhsSource::Quadrature, RhsSource::ExactExpression),
        "binomially weighted integrand = 1/((m-1) k a^(m-1))", |g| {
        let mut out = Vec::new();
        for m in 2..=g.binomial_m_max {
            for k in 1..=g.binomial_k_max {
                for &a in &g.a {
                    let (integrand, rhs) = binom_weighted_identity(m, k, a)?;
                    let p = params([("m", int(m)), ("k", int(k)), ("a", real(a))]);
                    let check = Check::Quadrature { integrand, rhs: Rhs::Real(rhs), floor: 0.0 };
                    out.push(case("binomial_weighted", p, check));
                }
            }
        }
        Ok(out)
    }),
    e!("geometric.minus", Suite::Core, QUAD, "(x^k-1) ln x/((x-1)(x+a)^(k+1))", |g| {
        k_by_a("geometric.minus", g, 1..=g.geometric_k_max, |k| Ok(geometric_numerator_identity(k)?.0),
            |k, a| geometric_integrand(k, a, -1))
    }),
    e!("geometric.plus", Suite::Core, QUAD, "(x^k+1) ln x/((x-1)(x+a)^(k+1))", |g| {
        k_by_a("geometric.plus", g, 1..=g.geometric_k_max, |k| Ok(geometric_numerator_identity(k)?.1),
            |k, a| geometric_integrand(k, a, 1))
    }),
    e!("geometric.partial_sum", Suite::Core, QUAD, "ln x sum_(j<k) x^j/(x+a)^(k+1)", |g| {
        k_by_a("geometric.partial_sum", g, 1..=g.geometric_k_max, |k| Ok(geometric_numerator_identity(k)?.0),
            partial_sum_integrand)
    }),
    e!("cross.f0_general", Suite::General, FORMS, "F(0,k) specialized vs general", |g| {
        cross("cross.f0_general", 0, g, closed_F0, closed_F_general)
    }),
    e!("cross.f1_general", Suite::General, FORMS, "F(1,k) specialized vs general", |g| {
        cross("cross.f1_general", 1, g, closed_F1, closed_F_general)
    }),
    e!("cross.f2_general", Suite::General, FORMS, "F(2,k) specialized vs general", |g| {
        cross("cross.f2_general", 2, g, closed_F2, closed_F_general)
    }),
    e!("cross.f0_alt", Suite::General, FORMS, "F(0,k) specialized vs alternative general", |g| {
        cross("cross.f0_alt", 0, g, closed_F0, closed_F_general_alt)
    }),
    e!("cross.f1_alt", Suite::General, FORMS, "F(1,k) specialized vs alternative general", |g| {
        cross("cross.f1_alt", 1, g, closed_F1, closed_F_general_alt)
    }),
    e!("cross.f2_alt", Suite::General, FORMS, "F(2,k) specialized vs alternative general", |g| {
        cross("cross.f2_alt", 2, g, closed_F2, closed_F_general_alt)
    }),
    e!("cross.general_alt", Suite::General, FORMS, "general vs alternative general form", |g| {
        let mut out = Vec::new();
        for m in 0..=g.m_max {
            for k in 0..=g.k_max {
                let p = params([("m", int(m)), ("k", int(k))]);
                let check = Check::Forms { lhs: closed_F_general(m, k), rhs: closed_F_general_alt(m, k) };
                out.push(case("cross.general_alt", p, check));
            }
        }
        Ok(out)
    }),
    e!("cross.fm0_general", Suite::General, FORMS, "simplified F(m,0) vs general at k=0", |g| {
        Ok((0..=g.m_max)
            .map(|m| {
                let check = Check::Forms { lhs: closed_Fm0(m), rhs: closed_F_general(m, 0) };
                case("cross.fm0_general", params([("m", int(m))]), check)
            })
            .collect())
    }),
    e!("cross.geometric_minus", Suite::General, FORMS, "minus case vs F(k,0) - F(0,k)", |g| {
        forms_over_k("cross.geometric_minus", 1..=g.geometric_k_max, |k| {
            Ok((geometric_numerator_identity(k)?.0, closed_F_general(k, 0) - closed_F0(k)))
        })
    }),
    e!("cross.geometric_plus", Suite::General, FORMS, "plus case vs F(k,0) + F(0,k)", |g| {
        forms_over_k("cross.geometric_plus", 1..=g.geometric_k_max, |k| {
            Ok((geometric_numerator_identity(k)?.1, closed_F_general(k, 0) + closed_F0(k)))
        })
    }),
    e!("cross.reciprocal_substitution", Suite::General, FORMS, "helper vs a^-(k+1) F(0,k,1/a)", |g| {
        forms_over_k("cross.reciprocal_substitution", 0..=g.k_max, |k| {
            let via = closed_F0(k).substitute_reciprocal() * LogPolyExpr::a_pow(-(k as i32 + 1));
            Ok((reciprocal_helper(k), via))
        })
    }),
    e!("deriv.pi2_ln2", Suite::Lemmas, FORMS, "k-th derivative of pi^2 + ln^2 a", |g| {
        forms_over_k("deriv.pi2_ln2", 1..=g.derivative_k_max, |k| {
            let lhs = (LogPolyExpr::pi_squared() + LogPolyExpr::ln_pow(2)).differentiate(k);
            Ok((lhs, dk_pi2_ln2(k)?))
        })
    }),
    e!("lemma.closed_derivative", Suite::Lemmas, (LhsSource::ExactExpression, RhsSource::FiniteDifference),
        "k-th derivative of (a+c)/(ax+1)^s vs finite differences", |g| {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let mut out = Vec::new();
        for _ in 0..g.lemma_samples {
            let c = (rng.gen_range(-2.0..2.0f64) * 64.0).round() / 64.0;
            let s = rng.gen_range(1..=4u32);
            let x = (rng.gen_range(0.1..3.0f64) * 64.0).round() / 64.0;
            let k = rng.gen_range(0..=6u32);
            let a = (rng.gen_range(0.1..3.0f64) * 64.0).round() / 64.0;
            let p = params([("c", real(c)), ("s", int(s)), ("x", real(x)), ("k", int(k)), ("a", real(a))]);
            let exact = |v: f64| from_f64(v).expect("finite sample");
            let check = Check::Lemma { c: exact(c), s, x: exact(x), k, a: exact(a) };
            out.push(case("lemma.closed_derivative", p, check));
        }
        Ok(out)
    }),
    fib_entry!(FibFamily::SquareLucas, "Lucas numerator over (x-1)(x^2+3x+1)^(k+1)"),
    fib_entry!(FibFamily::SquareFib, "Fibonacci numerator over (x-1)(x^2+3x+1)^(k+1)"),
    fib_entry!(FibFamily::EvenRLucas, "Lucas numerator over (x-1)(x^2+L_2r x+1)^(k+1)"),
    fib_entry!(FibFamily::EvenRFib, "Fibonacci numerator over (x-1)(x^2+L_2r x+1)^(k+1)"),
    fib_entry!(FibFamily::GeneralLucas, "F(m,0,a) at golden powers, Lucas kind"),
    fib_entry!(FibFamily::GeneralFib, "F(m,0,a) at golden powers, Fibonacci kind"),
    fib_entry!(FibFamily::CombMinusLucas, "(x^k-1) combined numerator, Lucas kind"),
    fib_entry!(FibFamily::CombPlusLucas, "(x^k+1) combined numerator, Lucas kind"),
    fib_entry!(FibFamily::CombMinusFib, "(x^k-1) combined numerator, Fibonacci kind"),
    fib_entry!(FibFamily::CombPlusFib, "(x^k+1) combined numerator, Fibonacci kind"),
    e!("fib.rederivation", Suite::Fib, (LhsSource::ExactExpression, RhsSource::GoldenValue),
        "displayed right-hand side vs exact substitution at alpha^(2r), beta^(2r)", |g| {
        let mut out = Vec::new();
        for family in FibFamily::ALL {
            let (rs, n_max) = if family.uses_r() { (g.r.clone(), g.fib_n_max) } else { (vec![0], g.fib_rederive_max) };
            for r in rs {
                for n in 0..=n_max {
                    let spec = FibIntegrandSpec::new(family, n, r)?;
                    let mut p = params([("family", ParamValue::Text(family.id().into())), ("n", int(n))]);
                    if family.uses_r() {
                        p.insert("r".into(), int(r));
                    }
                    let check = Check::Golden { lhs: build_rhs(&spec)?, rhs: derive_rhs(&spec)? };
                    out.push(case("fib.rederivation", p, check));
                }
            }
        }
        Ok(out)
    }),
    e!("fib.affine", Suite::Fib, (LhsSource::Quadrature, RhsSource::GoldenValue),
        "(sx+q) over (x-1)(x^2+3x+1) and (sx^2+qx+r) over (x^2+3x+1)^2", |_| {
        let mut out = Vec::new();
        for (s, q) in [(0.0, 1.0), (1.0, 0.0), (2.0, 3.0), (1.0, -1.0), (-0.5, 4.25)] {
            let (integrand, rhs) = affine_family_check(s, q)?;
            let p = params([("s", real(s)), ("q", real(q))]);
            let check = Check::Quadrature { integrand, rhs: Rhs::Golden(rhs), floor: 0.0 };
            out.push(case("fib.affine", p, check));
        }
        for (s, q, r) in [(2.0, 6.0, 7.0), (0.0, 2.0, 3.0), (1.0, 7.0, 1.0), (3.0, -2.0, 5.0)] {
            let (integrand, rhs) = affine_quadratic_check(s, q, r)?;
            let p = params([("s", real(s)), ("q", real(q)), ("r", real(r))]);
            let check = Check::Quadrature { integrand, rhs: Rhs::Golden(rhs), floor: 0.0 };
            out.push(case("fib.affine", p, check));
        }
        Ok(out)
    }),
    e!("fib.golden_base", Suite::Fib, (LhsSource::Quadrature, RhsSource::GoldenValue),
        "base integral at a = alpha^2, alpha^-2, alpha, 1/alpha", |_| {
        golden_base_specializations()?
            .into_iter()
            .map(|c| {
                let p = params([("case", ParamValue::Text(c.id.into()))]);
                let check = Check::Quadrature { integrand: c.integrand, rhs: Rhs::Golden(c.rhs), floor: 0.0 };
                Ok(case("fib.golden_base", p, check))
            })
            .collect()
    }),
    e!("fib.sum_factorization", Suite::Fib, (LhsSource::ExactExpression, RhsSource::ExactExpression),
        "F_u +- F_v and L_u +- L_v as products, u = v mod 2", |_| {
        let mut out = Vec::new();
        for kind in SumKind::ALL {
            for (u, v) in [(10, 4), (7, 3), (12, -6), (-9, 5), (0, 0), (33, 17)] {
                let f = fib_sum_factorization(u, v, kind)?;
                let p = params([
                    ("kind", ParamValue::Text(format!("{kind:?}"))),
                    ("u", int(u)),
                    ("v", int(v)),
                ]);
                let check = Check::Integer { lhs: f.value(), rhs: kind.direct(u, v) };
                out.push(case("fib.sum_factorization", p, check));
            }
        }
        Ok(out)
    }),
];

/// Every identity the harness knows, in report order.
pub fn catalog() -> &'static [IdentityEntry] {
    &CATALOG
}
