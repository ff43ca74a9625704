//! Timing comparison of the full singular spectrum against the
//! minimum-only path on realigned Ginibre states.

use std::fmt;
use std::time::{Duration, Instant};

use realign_core::families::random_ginibre_state;
use realign_core::{min_singular_value, realign, singular_values};

use crate::error::{CliError, Result};

/// Agreement tolerance, relative to `max(1, s_max)`.
pub const AGREEMENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub d: usize,
    pub trials: usize,
    pub seed: u64,
    pub mean_full: Duration,
    pub mean_min_only: Duration,
    pub max_disagreement: f64,
    pub agree: bool,
    /// Trials with `s_min < 1/d²`.
    pub below_threshold: usize,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "d={} trials={} seed={}", self.d, self.trials, self.seed)?;
        writeln!(
            f,
            "full_spectrum_mean_us={:.3}",
            self.mean_full.as_secs_f64() * 1e6
        )?;
        writeln!(
            f,
            "min_only_mean_us={:.3}",
            self.mean_min_only.as_secs_f64() * 1e6
        )?;
        writeln!(f, "max_s_min_disagreement={:.3e}", self.max_disagreement)?;
        writeln!(f, "agreement={}", if self.agree { "OK" } else { "FAILED" })?;
        writeln!(
            f,
            "s_min_below_1/d^2={}/{} ({:.1}%)",
            self.below_threshold,
            self.trials,
            100.0 * self.below_threshold as f64 / self.trials as f64
        )
    }
}

/// Trial `i` uses Ginibre seed `seed + i`.
pub fn run_bench(d: usize, trials: usize, seed: u64) -> Result<BenchReport> {
    if d < 2 {
        return Err(CliError::Input(format!("d must be at least 2, got {d}")));
    }
    if trials == 0 {
        return Err(CliError::Input("trials must be at least 1".into()));
    }
    let threshold = 1.0 / (d * d) as f64;
    let mut full = Duration::ZERO;
    let mut min_only = Duration::ZERO;
    let mut max_disagreement: f64 = 0.0;
    let mut agree = true;
    let mut below_threshold = 0;

    for i in 0..trials {
        let rho = random_ginibre_state(d, d, seed.wrapping_add(i as u64))?;
        let r = realign(&rho);

        let start = Instant::now();
        let spectrum = singular_values(std::hint::black_box(&r));
        let norm = std::hint::black_box(spectrum.sum());
        full += start.elapsed();

        let start = Instant::now();
        let s_min = min_singular_value(std::hint::black_box(&r));
        min_only += start.elapsed();

        if !(norm.is_finite() && s_min.is_finite()) {
            return Err(CliError::Numeric(format!(
                "non-finite spectrum in trial {i}"
            )));
        }
        let diff = (s_min - spectrum.min()).abs();
        max_disagreement = max_disagreement.max(diff);
        agree &= diff <= AGREEMENT_TOL * spectrum.max().max(1.0);
        if s_min < threshold {
            below_threshold += 1;
        }
    }

    Ok(BenchReport {
        d,
        trials,
        seed,
        mean_full: full / trials as u32,
        mean_min_only: min_only / trials as u32,
        max_disagreement,
        agree,
        below_threshold,
    })
}
