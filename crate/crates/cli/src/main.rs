//! `logint`: evaluate, integrate, verify and tabulate the logarithmic
//! integrals F(m,k,a) = ∫₀^∞ xᵐ ln x/((x−1)(x+a)^{k+m+1}) dx.

mod args;
mod config;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use thiserror::Error;

use args::{Cli, Command, EvalArgs, QuadArgs, TableArgs, VerifyArgs};
use logint_core::closed::{closed_F_general, errors, within_tolerance};
use logint_core::harness::{build_table, run_suite, TableRanges};
use logint_core::quad::{integrate, LogIntegrand, QuadratureOptions};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] logint_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Stdout(#[from] io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Core(logint_core::Error::InvalidParameter(_))
            | CliError::Core(logint_core::Error::NonPositiveArgument(_))
            | CliError::Core(logint_core::Error::NotIntegrable(_)) => 2,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(a) => eval(&a),
        Command::Quad(a) => quad(&a),
        Command::Verify(a) => verify(&a),
        Command::Table(a) => table(&a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn check_a(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--a must be a positive real, got {a}")))
    }
}

fn eval(args: &EvalArgs) -> Result<bool> {
    check_a(args.a)?;
    let expr = closed_F_general(args.m, args.k);
    let value = expr.evaluate(args.a)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{value:.15}")?;
    if args.exact {
        writeln!(out, "{expr}")?;
    }
    if !args.check {
        return Ok(true);
    }
    let q = integrate(&LogIntegrand::family(args.m, args.k, args.a)?, 1e-12)?;
    let (_, rel) = errors(q.value, value);
    let pass = within_tolerance(q.value, value, args.tol);
    let verdict = if pass { "pass" } else { "FAIL" };
    writeln!(out, "quadrature {:.15} rel_err {rel:.3e} {verdict}", q.value)?;
    Ok(pass)
}

fn quad(args: &QuadArgs) -> Result<bool> {
    check_a(args.a)?;
    let f = LogIntegrand::family(args.m, args.k, args.a)?;
    let q = integrate(&f, args.tol)?;
    let mut out = io::stdout().lock();
    writeln!(out, "{:.15}", q.value)?;
    writeln!(
        out,
        "abs_error_estimate {:.3e} evaluations {} subdivisions {}",
        q.abs_error_estimate, q.function_evaluations, q.subdivisions
    )?;
    Ok(true)
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let settings = config::resolve(args)?;
    let report = run_suite(settings.suite, settings.tolerance, &settings.grid)?;
    let json = serde_json::to_string_pretty(&report)?;
    match &settings.output {
        Some(path) => write_file(path, &json)?,
        None => writeln!(io::stdout().lock(), "{json}")?,
    }
    let s = &report.summary;
    let mut err = io::stderr().lock();
    for case in report.failures() {
        let reason = case.reason.as_deref().unwrap_or("tolerance exceeded");
        writeln!(err, "FAIL {} {:?}: {reason}", case.identity_id, case.parameters)?;
    }
    writeln!(
        err,
        "suite {}: {} cases, {} passed, {} failed ({:.1}s)",
        s.suite, s.total, s.passed, s.failed, report.timing.wall_time_seconds
    )?;
    Ok(report.all_passed())
}

fn table(args: &TableArgs) -> Result<bool> {
    let defaults = TableRanges::default();
    let ranges = TableRanges {
        m: args.m.clone().map_or(Ok(defaults.m), |s| config::parse_u32_list(&s))?,
        k: args.k.clone().map_or(Ok(defaults.k), |s| config::parse_u32_list(&s))?,
        a: args.a.clone().map_or(Ok(defaults.a), |s| config::parse_f64_list(&s))?,
        r: args.r.clone().map_or(Ok(defaults.r), |s| config::parse_u32_list(&s))?,
    };
    let rows = build_table(args.family, &ranges, &QuadratureOptions::from_env())?;
    let text = output::render(&rows, args.format)?;
    match &args.out {
        Some(path) => write_file(path, &text)?,
        None => write!(io::stdout().lock(), "{text}")?,
    }
    Ok(true)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
