//! One-parameter sweeps over the 3x3 families, written as CSV.

use std::fmt;

use rayon::prelude::*;
use realign_core::criteria::{min_singular_criterion, ppt_criterion, realignment_criterion};
use realign_core::families::{make_horodecki_beta, make_horodecki_f};
use realign_core::{DensityMatrix, Verdict};

use crate::error::{CliError, Result};
use crate::format::csv_number;

pub const CSV_HEADER: &str =
    "param,trace_norm_R,s_min_R,min_pt_eig,verdict_ppt,verdict_realign,verdict_smin";

/// Families with exactly one scanned parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFamily {
    HorodeckiF,
    HorodeckiBeta,
}

impl SweepFamily {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "horodecki-f" => Ok(SweepFamily::HorodeckiF),
            "horodecki-beta" => Ok(SweepFamily::HorodeckiBeta),
            other => Err(CliError::Input(format!(
                "family '{other}' cannot be swept (use horodecki-f or horodecki-beta)"
            ))),
        }
    }

    pub fn build(&self, param: f64) -> Result<DensityMatrix> {
        Ok(match self {
            SweepFamily::HorodeckiF => make_horodecki_f(param)?,
            SweepFamily::HorodeckiBeta => make_horodecki_beta(param)?,
        })
    }
}

/// Inclusive grid `from, from + step, ...` not exceeding `to`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub from: f64,
    pub to: f64,
    pub step: f64,
}

impl SweepRange {
    /// Parses `from:to:step`. Requires `step > 0` and `from <= to`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [from, to, step] = parts.as_slice() else {
            return Err(CliError::Input(format!(
                "range must be from:to:step, got '{text}'"
            )));
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Input(format!("bad number '{s}' in range '{text}'")))
        };
        let range = SweepRange {
            from: num(from)?,
            to: num(to)?,
            step: num(step)?,
        };
        if range.step <= 0.0 {
            return Err(CliError::Input(format!(
                "range step must be positive, got {}",
                range.step
            )));
        }
        if range.to < range.from {
            return Err(CliError::Input(format!(
                "empty range '{text}': from exceeds to"
            )));
        }
        Ok(range)
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.to - self.from) / self.step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| (self.from + i as f64 * self.step).min(self.to))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub trace_norm_r: f64,
    pub s_min_r: f64,
    pub min_pt_eig: f64,
    pub verdict_ppt: Verdict,
    pub verdict_realign: Verdict,
    pub verdict_smin: Verdict,
    /// `1/d²` for the swept family.
    pub smin_threshold: f64,
    pub tol: f64,
}

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            csv_number(self.param),
            csv_number(self.trace_norm_r),
            csv_number(self.s_min_r),
            csv_number(self.min_pt_eig),
            self.verdict_ppt,
            self.verdict_realign,
            self.verdict_smin
        )
    }
}

pub fn evaluate_point(family: SweepFamily, param: f64, tol: f64) -> Result<SweepRow> {
    let rho = family.build(param)?;
    let ppt = ppt_criterion(&rho, tol);
    let realign = realignment_criterion(&rho, tol);
    let smin = min_singular_criterion(&rho, tol)?;
    let row = SweepRow {
        param,
        trace_norm_r: realign.statistic("trace_norm").unwrap_or(f64::NAN),
        s_min_r: smin.statistic("s_min").unwrap_or(f64::NAN),
        min_pt_eig: ppt.statistic("min_pt_eigenvalue").unwrap_or(f64::NAN),
        verdict_ppt: ppt.verdict,
        verdict_realign: realign.verdict,
        verdict_smin: smin.verdict,
        smin_threshold: smin.threshold,
        tol,
    };
    if !(row.trace_norm_r.is_finite() && row.s_min_r.is_finite() && row.min_pt_eig.is_finite()) {
        return Err(CliError::Numeric(format!(
            "non-finite statistic at param {param}"
        )));
    }
    Ok(row)
}

/// Evaluates every grid point (in parallel); rows come back in grid order.
pub fn run_sweep(family: SweepFamily, range: SweepRange, tol: f64) -> Result<Vec<SweepRow>> {
    range
        .points()
        .into_par_iter()
        .map(|p| evaluate_point(family, p, tol))
        .collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

/// First grid interval where a verdict column flips, with the parameter
/// where the underlying statistic crosses its threshold (linear
/// interpolation between the two grid points).
#[derive(Debug, Clone, PartialEq)]
pub struct Crossing {
    pub column: &'static str,
    pub from: Verdict,
    pub to: Verdict,
    pub param: f64,
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "crossing {}: {} -> {} at param ~ {}",
            self.column,
            self.from,
            self.to,
            crate::format::sig(self.param, 6)
        )
    }
}

type ColumnAccess = (&'static str, fn(&SweepRow) -> Verdict, fn(&SweepRow) -> f64);

// Offsets are measured from the tolerance-adjusted decision boundary.
const COLUMNS: [ColumnAccess; 3] = [
    ("verdict_ppt", |r| r.verdict_ppt, |r| r.min_pt_eig + r.tol),
    (
        "verdict_realign",
        |r| r.verdict_realign,
        |r| r.trace_norm_r - 1.0 - r.tol,
    ),
    (
        "verdict_smin",
        |r| r.verdict_smin,
        |r| r.s_min_r - r.smin_threshold - r.tol,
    ),
];

pub fn crossings(rows: &[SweepRow]) -> Vec<Crossing> {
    let mut out = Vec::new();
    for (column, verdict, offset) in COLUMNS {
        let Some(i) = (1..rows.len()).find(|&i| verdict(&rows[i]) != verdict(&rows[i - 1])) else {
            continue;
        };
        let (a, b) = (&rows[i - 1], &rows[i]);
        let (ga, gb) = (offset(a), offset(b));
        let param = if ga != gb && ga.signum() != gb.signum() {
            a.param + (b.param - a.param) * ga / (ga - gb)
        } else {
            0.5 * (a.param + b.param)
        };
        out.push(Crossing {
            column,
            from: verdict(a),
            to: verdict(b),
            param,
        });
    }
    out
}
