//! Verify settings: defaults, then the `--grid` TOML file, then flags.
//!
//! The file is flat. `suite`, `tolerance` and `output` configure the run;
//! every other key is a [`GridConfig`] field (`a`, `m_max`, `k_max`, `r`, ...).

use std::fs;
use std::path::PathBuf;

use logint_core::harness::{GridConfig, Suite, DEFAULT_TOLERANCE};

use crate::args::VerifyArgs;
use crate::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub suite: Suite,
    pub tolerance: f64,
    pub output: Option<PathBuf>,
    pub grid: GridConfig,
}

pub fn parse_config(text: &str) -> Result<Settings> {
    let mut table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| CliError::Usage(format!("grid file: {e}")))?;
    let suite = match table.remove("suite") {
        Some(toml::Value::String(s)) => s.parse()?,
        Some(other) => return Err(CliError::Usage(format!("suite must be a string, got {other}"))),
        None => Suite::All,
    };
    let tolerance = match table.remove("tolerance") {
        Some(toml::Value::Float(t)) => t,
        Some(other) => return Err(CliError::Usage(format!("tolerance must be a float, got {other}"))),
        None => DEFAULT_TOLERANCE,
    };
    let output = match table.remove("output") {
        Some(toml::Value::String(s)) => Some(PathBuf::from(s)),
        Some(other) => return Err(CliError::Usage(format!("output must be a string, got {other}"))),
        None => None,
    };
    let grid: GridConfig = toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| CliError::Usage(format!("grid file: {e}")))?;
    Ok(Settings { suite, tolerance, output, grid })
}

pub fn resolve(args: &VerifyArgs) -> Result<Settings> {
    let mut settings = match &args.grid {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            parse_config(&text)?
        }
        None => Settings {
            suite: Suite::All,
            tolerance: DEFAULT_TOLERANCE,
            output: None,
            grid: GridConfig::default(),
        },
    };
    if let Some(s) = &args.suite {
        settings.suite = s.parse()?;
    }
    if let Some(t) = args.tol {
        settings.tolerance = t;
    }
    if let Some(out) = &args.out {
        settings.output = Some(out.clone());
    }
    if let Some(m) = args.m {
        settings.grid.m_max = m;
    }
    if let Some(k) = args.k {
        settings.grid.k_max = k;
    }
    if let Some(a) = &args.a {
        settings.grid.a = parse_f64_list(a)?;
    }
    if let Some(r) = &args.r {
        settings.grid.r = parse_u32_list(r)?;
    }
    Ok(settings)
}

/// `3`, `0,2,5`, `0..3` or `0..=3` (both range forms inclusive).
pub fn parse_u32_list(text: &str) -> Result<Vec<u32>> {
    let bad = || CliError::Usage(format!("cannot parse {text:?} as a list or range of integers"));
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

pub fn parse_f64_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("cannot parse {s:?} as a real number")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_lists() {
        assert_eq!(parse_u32_list("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_u32_list("0..=2").unwrap(), vec![0, 1, 2]);
        assert_eq!(parse_u32_list("4, 1").unwrap(), vec![4, 1]);
        assert!(parse_u32_list("3..1").is_err());
        assert!(parse_u32_list("x").is_err());
        assert_eq!(parse_f64_list("1,2.5").unwrap(), vec![1.0, 2.5]);
    }

    #[test]
    fn config_file_keys() {
        let s = parse_config("suite = \"fib\"\ntolerance = 1e-8\na = [1.0, 2.0]\nk_max = 3\n").unwrap();
        assert_eq!(s.suite, Suite::Fib);
        assert_eq!(s.tolerance, 1e-8);
        assert_eq!(s.grid.a, vec![1.0, 2.0]);
        assert_eq!(s.grid.k_max, 3);
        assert_eq!(s.grid.m_max, GridConfig::default().m_max);
        assert!(parse_config("bogus_key = 1").is_err());
        assert!(parse_config("suite = 3").is_err());
    }
}
