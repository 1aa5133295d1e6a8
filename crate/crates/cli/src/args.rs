use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use logint_core::harness::{TableFamily, DEFAULT_TOLERANCE};

#[derive(Debug, Parser)]
#[command(name = "logint", version, about = "Closed forms and quadrature for F(m,k,a) = ∫₀^∞ xᵐ ln x/((x−1)(x+a)^(k+m+1)) dx")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate F(m,k,a) from its closed form.
    Eval(EvalArgs),
    /// Integrate F(m,k,a) numerically.
    Quad(QuadArgs),
    /// Run a verification suite and emit a JSON report.
    Verify(VerifyArgs),
    /// Tabulate closed forms next to quadrature.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long)]
    pub a: f64,
    /// Also print the exact expression in a.
    #[arg(long)]
    pub exact: bool,
    /// Cross-check against quadrature.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long)]
    pub a: f64,
    /// Target relative tolerance (at least 1e-13).
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// core, fib, lemmas, general or all.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// TOML file of run settings plus grid keys.
    #[arg(long)]
    pub grid: Option<PathBuf>,
    /// Report path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest m in the theorem grid.
    #[arg(long)]
    pub m: Option<u32>,
    /// Largest k in the theorem grid.
    #[arg(long)]
    pub k: Option<u32>,
    /// Comma-separated values of a.
    #[arg(long)]
    pub a: Option<String>,
    /// Comma-separated even values of r.
    #[arg(long)]
    pub r: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// F0, F1, F2, general or fib.
    #[arg(long, value_parser = parse_family)]
    pub family: TableFamily,
    /// List or range of m, e.g. `0..2` or `0,3`.
    #[arg(long)]
    pub m: Option<String>,
    /// List or range of k (k or m for fib rows).
    #[arg(long)]
    pub k: Option<String>,
    /// Comma-separated values of a.
    #[arg(long)]
    pub a: Option<String>,
    /// Comma-separated even values of r.
    #[arg(long)]
    pub r: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<TableFamily, String> {
    s.parse().map_err(|e: logint_core::Error| e.to_string())
}
