use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{run_anc_with, AlgoConfig, RunOptions, SnrSummary};
use crate::signal::Scenario;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    /// Filter length `M`.
    Taps,
    /// Window length `L`.
    Window,
    /// Step size `μ`.
    StepSize,
    /// Updates per sample `P`.
    Iterations,
}

impl SweepParam {
    pub const VALID: &'static str = "m, l, mu, p";

    /// Copy of `base` with this parameter set to `value`.
    pub fn apply(self, base: &AlgoConfig, value: f64) -> Result<AlgoConfig> {
        let count = || -> Result<usize> {
            if value.fract() == 0.0 && value >= 0.0 && value <= usize::MAX as f64 {
                Ok(value as usize)
            } else {
                Err(Error::config(format!("{self} takes whole numbers, got {value}")))
            }
        };
        let mut cfg = base.clone();
        match self {
            SweepParam::Taps => cfg.taps = count()?,
            SweepParam::Window => cfg.window = Some(count()?),
            SweepParam::StepSize => cfg.step_size = Some(value),
            SweepParam::Iterations => cfg.iterations = Some(count()?),
        }
        Ok(cfg)
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::Taps => "m",
            SweepParam::Window => "l",
            SweepParam::StepSize => "mu",
            SweepParam::Iterations => "p",
        })
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "m" => Ok(SweepParam::Taps),
            "l" => Ok(SweepParam::Window),
            "mu" => Ok(SweepParam::StepSize),
            "p" => Ok(SweepParam::Iterations),
            _ => Err(Error::config(format!(
                "unknown sweep parameter `{s}` (valid: {})",
                Self::VALID
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    /// SNR figures, or why this value could not be run.
    pub outcome: std::result::Result<SnrSummary, String>,
}

impl SweepRow {
    pub fn snri(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|s| s.snri)
    }
}

fn run_row(base: &AlgoConfig, param: SweepParam, value: f64, scenario: &Scenario, opts: &RunOptions) -> SweepRow {
    let outcome = param
        .apply(base, value)
        .and_then(|cfg| {
            cfg.build()?;
            run_anc_with(&cfg, &scenario.primary, &scenario.reference, Some(&scenario.clean), opts)
        })
        .map(|r| r.snr.expect("clean signal supplied"))
        .map_err(|e| e.to_string());
    SweepRow { value, outcome }
}

/// Runs `base` once per value of `param` on the same scenario. Rows come
/// back in input order; a value that cannot be run yields a row carrying
/// the reason. With `parallel` the runs are spread over the rayon pool.
pub fn sweep(
    base: &AlgoConfig,
    param: SweepParam,
    values: &[f64],
    scenario: &Scenario,
    opts: &RunOptions,
    parallel: bool,
) -> Result<Vec<SweepRow>> {
    if values.is_empty() {
        return Err(Error::config("sweep needs at least one value"));
    }
    let rows = if parallel {
        values
            .par_iter()
            .map(|&v| run_row(base, param, v, scenario, opts))
            .collect()
    } else {
        values
            .iter()
            .map(|&v| run_row(base, param, v, scenario, opts))
            .collect()
    };
    Ok(rows)
}
