//! Two-sensor adaptive noise cancellation.
//!
//! The reference sensor (noise only) drives the adaptive filter and the
//! primary sensor (speech plus noise) is its desired signal. The error
//! `e(n) = primary(n) − y(n)` is the system output: once the filter
//! reproduces the primary noise, what remains is the speech. The clean
//! signal, when available, is used only for scoring.

mod config;
mod metrics;
mod sweep;

pub use self::config::{AlgoConfig, Algorithm, DEFAULT_TAPS};
pub use self::metrics::{smooth_mse, snr_db};
pub use self::sweep::{sweep, SweepParam, SweepRow};

use crate::feds::MultiplyCount;
use crate::signal::Signal;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    /// Samples between coefficient snapshots.
    pub snapshot_period: usize,
    /// Moving-average length of the smoothed learning curve.
    pub smoothing_window: usize,
    /// Warm-up samples excluded from the input SNR.
    pub snr_in_skip: usize,
    /// Fraction of the run excluded from the output SNR.
    pub snr_out_skip_fraction: f64,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            snapshot_period: 100,
            smoothing_window: 256,
            snr_in_skip: 0,
            snr_out_skip_fraction: 0.1,
        }
    }
}

impl RunOptions {
    pub fn snr_out_skip(&self, len: usize) -> usize {
        ((len as f64 * self.snr_out_skip_fraction).floor() as usize).min(len.saturating_sub(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrSummary {
    pub snr_in: f64,
    pub snr_out: f64,
    /// Always `snr_out − snr_in`.
    pub snri: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TapSnapshot {
    pub sample: usize,
    pub taps: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AncResult {
    pub config: AlgoConfig,
    /// System output `e(n)`, same length as the primary input.
    pub denoised: Signal,
    /// Filter output `y(n)`, the noise estimate.
    pub noise_estimate: Vec<f64>,
    /// `e²(n)`.
    pub mse_curve: Vec<f64>,
    pub mse_smoothed: Vec<f64>,
    pub coeff_trajectory: Vec<TapSnapshot>,
    pub final_taps: Vec<f64>,
    /// Present when a clean signal was supplied.
    pub snr: Option<SnrSummary>,
    /// Per-sample operation tally of the last sample (FEDS/FAP only).
    pub multiply_counts: Option<MultiplyCount>,
}

pub fn run_anc(config: &AlgoConfig, primary: &Signal, reference: &Signal, clean: Option<&Signal>) -> Result<AncResult> {
    run_anc_with(config, primary, reference, clean, &RunOptions::default())
}

pub fn run_anc_with(
    config: &AlgoConfig,
    primary: &Signal,
    reference: &Signal,
    clean: Option<&Signal>,
    opts: &RunOptions,
) -> Result<AncResult> {
    let len = primary.len();
    if reference.len() != len {
        return Err(Error::LengthMismatch {
            what: "reference",
            got: reference.len(),
            expected: len,
        });
    }
    if let Some(c) = clean {
        if c.len() != len {
            return Err(Error::LengthMismatch {
                what: "clean",
                got: c.len(),
                expected: len,
            });
        }
    }
    for w in config.ignored_fields() {
        log::warn!("{} ignores --{w}", config.algorithm);
    }
    let mut filter = config.build()?;
    let snapshot_period = opts.snapshot_period.max(1);

    let mut denoised = Vec::with_capacity(len);
    let mut noise_estimate = Vec::with_capacity(len);
    let mut trajectory = Vec::with_capacity(len / snapshot_period + 1);
    for (n, (&d, &x)) in primary.samples().iter().zip(reference.samples()).enumerate() {
        let out = filter.step(x, d)?;
        noise_estimate.push(out.output);
        denoised.push(out.error);
        if n % snapshot_period == 0 {
            trajectory.push(TapSnapshot {
                sample: n,
                taps: filter.coefficients().to_vec(),
            });
        }
    }

    let mse_curve: Vec<f64> = denoised.iter().map(|e| e * e).collect();
    let mse_smoothed = smooth_mse(&mse_curve, opts.smoothing_window);
    let snr = clean
        .map(|c| -> Result<SnrSummary> {
            let snr_in = snr_db(c.samples(), primary.samples(), opts.snr_in_skip)?;
            let snr_out = snr_db(c.samples(), &denoised, opts.snr_out_skip(len))?;
            Ok(SnrSummary {
                snr_in,
                snr_out,
                snri: snr_out - snr_in,
            })
        })
        .transpose()?;

    Ok(AncResult {
        config: config.clone(),
        denoised: Signal::new(denoised, primary.sample_rate())?,
        noise_estimate,
        mse_curve,
        mse_smoothed,
        coeff_trajectory: trajectory,
        final_taps: filter.coefficients().to_vec(),
        snr,
        multiply_counts: filter.multiply_count(),
    })
}
