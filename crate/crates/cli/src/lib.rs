//! Command implementations behind the `realign` binary. Each `cmd_*`
//! returns the text to print on success; errors carry their exit code.

pub mod bench;
pub mod error;
pub mod format;
pub mod report;
pub mod statefile;
pub mod sweep;

use std::fs;
use std::path::Path;

use realign_core::{evaluate_all, FamilySpec};

pub use error::{CliError, Result};
use statefile::StateFile;
use sweep::{SweepFamily, SweepRange};

pub fn cmd_check(path: &Path, tol: f64, machine: bool) -> Result<String> {
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::Input(format!(
            "tolerance must be finite and non-negative, got {tol}"
        )));
    }
    let rho = StateFile::read(path)?.to_state(tol)?;
    let eval = evaluate_all(&rho, tol);
    if let Some((r, (k, _))) = eval
        .results
        .iter()
        .flat_map(|r| r.statistics.iter().map(move |s| (r, s)))
        .find(|(_, (_, v))| !v.is_finite())
    {
        return Err(CliError::Numeric(format!(
            "{} produced a non-finite {k}",
            r.name
        )));
    }
    Ok(report::render(&rho, &eval, machine))
}

/// Writes the CSV and returns the crossing summary.
pub fn cmd_sweep(family: &str, range: &str, out: &Path, tol: f64) -> Result<String> {
    let family = SweepFamily::parse(family)?;
    let range = SweepRange::parse(range)?;
    let rows = sweep::run_sweep(family, range, tol)?;
    fs::write(out, sweep::to_csv(&rows))
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", out.display())))?;
    let mut text = format!("wrote {} rows to {}\n", rows.len(), out.display());
    let crossings = sweep::crossings(&rows);
    if crossings.is_empty() {
        text.push_str("no verdict crossings in range\n");
    }
    for c in crossings {
        text.push_str(&format!("{c}\n"));
    }
    Ok(text)
}

/// Splits `k=v` arguments.
pub fn parse_params(raw: &[String]) -> Result<Vec<(String, String)>> {
    raw.iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CliError::Input(format!("parameter '{p}' must be key=value")))
        })
        .collect()
}

pub fn cmd_gen(family: &str, params: &[String], out: &Path) -> Result<String> {
    let spec = FamilySpec::from_params(family, &parse_params(params)?)?;
    let rho = spec.build()?;
    StateFile::from_state(&rho).write(out)?;
    Ok(format!("wrote {spec} to {}\n", out.display()))
}

pub fn cmd_bench(d: usize, trials: usize, seed: u64) -> Result<String> {
    let report = bench::run_bench(d, trials, seed)?;
    if !report.agree {
        return Err(CliError::Numeric(format!(
            "{report}full and minimum-only paths disagree on s_min"
        )));
    }
    Ok(report.to_string())
}
