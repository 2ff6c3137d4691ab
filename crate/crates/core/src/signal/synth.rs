//! Seeded two-microphone noise scenarios.
//!
//! A noise source `n1` is observed directly at the reference sensor and
//! through an FIR channel at the primary sensor, where it is added to a
//! clean signal:
//!
//! ```text
//! reference(n) = n1(n)
//! primary(n)   = clean(n) + sum_k w[k] * n1(n - k)
//! ```
//!
//! The noise is scaled so the clean-to-noise power ratio of the primary
//! equals the requested SNR, then all three signals are scaled together so
//! the largest magnitude is [`PEAK_LEVEL`].

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Signal, DEFAULT_SAMPLE_RATE};
use crate::{Error, Result};

/// Peak magnitude of the generated signals, leaving headroom below PCM full scale.
pub const PEAK_LEVEL: f64 = 0.9;

/// Samples discarded before recording autoregressive sources.
const BURN_IN: usize = 1000;

const CLEAN_STREAM: u64 = 1;
const NOISE_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseKind {
    White,
    /// First-order autoregressive noise with the given pole.
    Ar1(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CleanKind {
    /// Three fixed sinusoids.
    SineMix,
    /// Second-order autoregressive process with poles at 0.95·e^{±jπ/8}.
    Ar2,
}

impl std::fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NoiseKind::White => f.write_str("white"),
            NoiseKind::Ar1(rho) => write!(f, "ar1:{rho}"),
        }
    }
}

impl std::str::FromStr for NoiseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "white" => Ok(NoiseKind::White),
            _ => {
                let rho = s
                    .strip_prefix("ar1:")
                    .and_then(|r| r.parse::<f64>().ok())
                    .ok_or_else(|| Error::config(format!("unknown noise kind `{s}` (white | ar1:<rho>)")))?;
                Ok(NoiseKind::Ar1(rho))
            }
        }
    }
}

impl std::fmt::Display for CleanKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CleanKind::SineMix => "sine_mix",
            CleanKind::Ar2 => "ar2",
        })
    }
}

impl std::str::FromStr for CleanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sine_mix" => Ok(CleanKind::SineMix),
            "ar2" => Ok(CleanKind::Ar2),
            _ => Err(Error::config(format!("unknown clean kind `{s}` (sine_mix | ar2)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    /// The unknown noise path from source to primary sensor.
    pub channel_taps: Vec<f64>,
    pub num_samples: usize,
    pub noise_kind: NoiseKind,
    pub clean_kind: CleanKind,
    pub input_snr_db: f64,
    pub seed: u64,
    pub sample_rate: u32,
}

impl Default for SynthSpec {
    fn default() -> Self {
        Self {
            channel_taps: default_channel(8, 0),
            num_samples: 100_000,
            noise_kind: NoiseKind::White,
            clean_kind: CleanKind::Ar2,
            input_snr_db: -10.218,
            seed: 0,
            sample_rate: DEFAULT_SAMPLE_RATE,
        }
    }
}

/// Generated triple. `clean` is for scoring only.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub clean: Signal,
    pub primary: Signal,
    pub reference: Signal,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.channel_taps.is_empty() {
            return Err(Error::config("channel needs at least one tap"));
        }
        if self.channel_taps.iter().any(|t| !t.is_finite()) {
            return Err(Error::config("channel taps must be finite"));
        }
        if self.channel_taps.iter().all(|&t| t == 0.0) {
            return Err(Error::config("channel needs a nonzero tap"));
        }
        if self.num_samples == 0 {
            return Err(Error::config("num_samples must be positive"));
        }
        if !self.input_snr_db.is_finite() {
            return Err(Error::config("input SNR must be finite"));
        }
        if self.sample_rate == 0 {
            return Err(Error::config("sample rate must be positive"));
        }
        if let NoiseKind::Ar1(rho) = self.noise_kind {
            if rho.is_nan() || rho.abs() >= 1.0 {
                return Err(Error::config("ar1 pole must satisfy |rho| < 1"));
            }
        }
        Ok(())
    }
}

/// Deterministic channel of `order` taps: Gaussian draws under a gentle
/// decay, normalized to unit energy.
pub fn default_channel(order: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_c4a7);
    let mut taps: Vec<f64> = (0..order)
        .map(|k| {
            let g: f64 = StandardNormal.sample(&mut rng);
            let g = if g.abs() < 0.3 { 0.3f64.copysign(g) } else { g };
            g * 0.9f64.powi(k as i32)
        })
        .collect();
    let norm = taps.iter().map(|t| t * t).sum::<f64>().sqrt();
    if norm > 0.0 {
        taps.iter_mut().for_each(|t| *t /= norm);
    }
    taps
}

/// Causal FIR filtering with zero prehistory; output has the input's length.
pub fn convolve(taps: &[f64], x: &[f64]) -> Vec<f64> {
    (0..x.len())
        .map(|n| {
            taps.iter()
                .take(n + 1)
                .enumerate()
                .map(|(k, t)| t * x[n - k])
                .sum()
        })
        .collect()
}

fn power(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64
}

fn clean_source(kind: CleanKind, len: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match kind {
        CleanKind::SineMix => {
            // 300, 700 and 1900 Hz at 8 kHz.
            const PARTIALS: [(f64, f64, f64); 3] =
                [(0.0375, 1.0, 0.0), (0.0875, 0.6, 1.0), (0.2375, 0.3, 2.0)];
            (0..len)
                .map(|n| {
                    PARTIALS
                        .iter()
                        .map(|(f, a, ph)| a * (2.0 * PI * f * n as f64 + ph).sin())
                        .sum()
                })
                .collect()
        }
        CleanKind::Ar2 => {
            let a1 = 2.0 * 0.95 * (PI / 8.0).cos();
            let a2 = -0.95 * 0.95;
            let (mut s1, mut s2) = (0.0, 0.0);
            let mut out = Vec::with_capacity(len);
            for i in 0..len + BURN_IN {
                let w: f64 = StandardNormal.sample(rng);
                let s = a1 * s1 + a2 * s2 + w;
                s2 = s1;
                s1 = s;
                if i >= BURN_IN {
                    out.push(s);
                }
            }
            out
        }
    }
}

fn noise_source(kind: NoiseKind, len: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match kind {
        NoiseKind::White => (0..len).map(|_| StandardNormal.sample(rng)).collect(),
        NoiseKind::Ar1(rho) => {
            let gain = (1.0 - rho * rho).sqrt();
            let mut prev = 0.0;
            let mut out = Vec::with_capacity(len);
            for i in 0..len + BURN_IN {
                let w: f64 = StandardNormal.sample(rng);
                prev = rho * prev + gain * w;
                if i >= BURN_IN {
                    out.push(prev);
                }
            }
            out
        }
    }
}

pub fn synth_anc_scenario(spec: &SynthSpec) -> Result<Scenario> {
    spec.validate()?;
    let len = spec.num_samples;

    let mut clean_rng = ChaCha8Rng::seed_from_u64(spec.seed);
    clean_rng.set_stream(CLEAN_STREAM);
    let mut noise_rng = ChaCha8Rng::seed_from_u64(spec.seed);
    noise_rng.set_stream(NOISE_STREAM);

    let mut clean = clean_source(spec.clean_kind, len, &mut clean_rng);
    let mut reference = noise_source(spec.noise_kind, len, &mut noise_rng);

    let clean_power = power(&clean);
    let raw_noise_power = power(&convolve(&spec.channel_taps, &reference));
    if clean_power == 0.0 || raw_noise_power == 0.0 {
        return Err(Error::config("scenario too short to carry signal and noise power"));
    }
    let target_ratio = 10f64.powf(spec.input_snr_db / 10.0);
    let noise_gain = (clean_power / (raw_noise_power * target_ratio)).sqrt();
    reference.iter_mut().for_each(|v| *v *= noise_gain);

    let noise = convolve(&spec.channel_taps, &reference);
    let peak = clean
        .iter()
        .zip(&noise)
        .map(|(c, v)| (c + v).abs())
        .chain(reference.iter().map(|v| v.abs()))
        .chain(clean.iter().map(|v| v.abs()))
        .fold(0.0, f64::max);
    let level = PEAK_LEVEL / peak;
    clean.iter_mut().for_each(|v| *v *= level);
    reference.iter_mut().for_each(|v| *v *= level);

    let noise = convolve(&spec.channel_taps, &reference);
    let primary: Vec<f64> = clean.iter().zip(&noise).map(|(c, v)| c + v).collect();

    Ok(Scenario {
        clean: Signal::new(clean, spec.sample_rate)?,
        primary: Signal::new(primary, spec.sample_rate)?,
        reference: Signal::new(reference, spec.sample_rate)?,
    })
}
