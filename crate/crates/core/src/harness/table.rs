use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed::{closed_F0, closed_F1, closed_F2, closed_F_general, errors};
use crate::error::{Error, Result};
use crate::fib::{build_integrand, build_rhs, FibFamily, FibIntegrandSpec};
use crate::logpoly::LogPolyExpr;
use crate::quad::{integrate_with, LogIntegrand, QuadratureOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFamily {
    F0,
    F1,
    F2,
    General,
    Fib,
}

impl FromStr for TableFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<TableFamily> {
        match s.to_ascii_lowercase().as_str() {
            "f0" => Ok(TableFamily::F0),
            "f1" => Ok(TableFamily::F1),
            "f2" => Ok(TableFamily::F2),
            "general" => Ok(TableFamily::General),
            "fib" => Ok(TableFamily::Fib),
            _ => Err(Error::InvalidParameter(format!("unknown table family {s:?}"))),
        }
    }
}

impl fmt::Display for TableFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableFamily::F0 => "F0",
            TableFamily::F1 => "F1",
            TableFamily::F2 => "F2",
            TableFamily::General => "general",
            TableFamily::Fib => "fib",
        })
    }
}

/// Parameter lists for a table. `m` is only read by `general`; `a` is not
/// read by `fib`, whose rows sit at golden powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRanges {
    pub m: Vec<u32>,
    pub k: Vec<u32>,
    pub a: Vec<f64>,
    pub r: Vec<u32>,
}

impl Default for TableRanges {
    fn default() -> Self {
        TableRanges {
            m: (0..=2).collect(),
            k: (0..=3).collect(),
            a: vec![1.0, 2.0],
            r: vec![2, 4],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub m: Option<u32>,
    pub k: Option<u32>,
    pub r: Option<u32>,
    pub a: Option<f64>,
    pub integrand: String,
    pub expression: String,
    pub value: f64,
    pub quadrature: Option<f64>,
    pub rel_err: Option<f64>,
}

struct Planned {
    family: String,
    m: Option<u32>,
    k: Option<u32>,
    r: Option<u32>,
    a: Option<f64>,
    integrand: LogIntegrand,
    expression: String,
    value: f64,
}

fn family_rows(
    name: &str,
    ms: &[u32],
    ranges: &TableRanges,
    build: impl Fn(u32, u32) -> LogPolyExpr,
) -> Result<Vec<Planned>> {
    let mut out = Vec::new();
    for &m in ms {
        for &k in &ranges.k {
            let e = build(m, k);
            for &a in &ranges.a {
                out.push(Planned {
                    family: name.to_string(),
                    m: Some(m),
                    k: Some(k),
                    r: None,
                    a: Some(a),
                    integrand: LogIntegrand::family(m, k, a)?,
                    expression: e.to_string(),
                    value: e.evaluate(a)?,
                });
            }
        }
    }
    Ok(out)
}

/// Rows in parameter order; quadrature runs in parallel.
pub fn build_table(
    family: TableFamily,
    ranges: &TableRanges,
    options: &QuadratureOptions,
) -> Result<Vec<TableRow>> {
    if let Some(&a) = ranges.a.iter().find(|&&a| !(a > 0.0 && a.is_finite())) {
        return Err(Error::NonPositiveArgument(a));
    }
    let planned = match family {
        TableFamily::F0 => family_rows("F0", &[0], ranges, |_, k| closed_F0(k))?,
        TableFamily::F1 => family_rows("F1", &[1], ranges, |_, k| closed_F1(k))?,
        TableFamily::F2 => family_rows("F2", &[2], ranges, |_, k| closed_F2(k))?,
        TableFamily::General => family_rows("general", &ranges.m, ranges, closed_F_general)?,
        TableFamily::Fib => {
            let mut out = Vec::new();
            for f in FibFamily::ALL {
                let rs: Vec<u32> = if f.uses_r() { ranges.r.clone() } else { vec![0] };
                for r in rs {
                    for &n in &ranges.k {
                        let spec = FibIntegrandSpec::new(f, n, r)?;
                        let rhs = build_rhs(&spec)?;
                        out.push(Planned {
                            family: f.id().to_string(),
                            m: None,
                            k: Some(n),
                            r: f.uses_r().then_some(r),
                            a: None,
                            integrand: build_integrand(&spec)?,
                            expression: rhs.to_string(),
                            value: rhs.to_f64(),
                        });
                    }
                }
            }
            out
        }
    };
    Ok(planned
        .into_par_iter()
        .map(|p| {
            let quadrature = integrate_with(&p.integrand, options).ok().map(|q| q.value);
            TableRow {
                integrand: p.integrand.to_string(),
                rel_err: quadrature.map(|q| errors(q, p.value).1),
                family: p.family,
                m: p.m,
                k: p.k,
                r: p.r,
                a: p.a,
                expression: p.expression,
                value: p.value,
                quadrature,
            }
        })
        .collect())
}
