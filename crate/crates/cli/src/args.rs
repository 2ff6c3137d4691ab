use std::path::PathBuf;

use adaptive_anc::anc::{AlgoConfig, Algorithm, DEFAULT_TAPS};
use adaptive_anc::signal::{default_channel, CleanKind, NoiseKind, SynthSpec};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "anc", version, about = "Two-microphone adaptive noise cancellation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one adaptive filter and write the denoised signal and curves.
    Run(RunArgs),
    /// Sweep one parameter and tabulate the SNR improvement.
    Sweep(SweepArgs),
    /// Generate a synthetic clean/primary/reference triple.
    Synth(SynthArgs),
    /// Run all six algorithms at their default parameters.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub algo: Algorithm,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub algo: Algorithm,
    /// Swept parameter: m, l, mu or p.
    #[arg(long)]
    pub param: String,
    /// Inclusive range `start:end[:step]`.
    #[arg(long, conflicts_with = "values", allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Comma-separated list of values.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    #[command(flatten)]
    pub filter: FilterArgs,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = DEFAULT_TAPS)]
    pub m: usize,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub synth: SynthFlags,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

/// Algorithm parameters. Unset values fall back to the algorithm defaults.
#[derive(Debug, Clone, Args)]
pub struct FilterArgs {
    /// Filter length.
    #[arg(long, default_value_t = DEFAULT_TAPS)]
    pub m: usize,
    #[arg(long)]
    pub mu: Option<f64>,
    /// RLS forgetting factor.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// RLS initial inverse correlation scale.
    #[arg(long)]
    pub delta_init: Option<f64>,
    /// NLMS regularizer.
    #[arg(long)]
    pub delta: Option<f64>,
    /// AP diagonal loading.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// AP projection order.
    #[arg(long)]
    pub k: Option<usize>,
    /// FEDS/FAP window length.
    #[arg(long)]
    pub l: Option<usize>,
    /// FEDS/FAP coefficient updates per sample.
    #[arg(long)]
    pub p: Option<usize>,
}

impl FilterArgs {
    pub fn config(&self, algorithm: Algorithm, seed: u64) -> AlgoConfig {
        AlgoConfig {
            step_size: self.mu,
            forgetting: self.lambda,
            nlms_delta: self.delta,
            ap_epsilon: self.epsilon,
            ap_order: self.k,
            window: self.l,
            iterations: self.p,
            rls_delta_init: self.delta_init,
            seed,
            ..AlgoConfig::new(algorithm, self.m)
        }
    }
}

/// Input WAV files, or a synthetic scenario when `--primary` is absent.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[arg(long, requires = "reference")]
    pub primary: Option<PathBuf>,
    #[arg(long, requires = "primary")]
    pub reference: Option<PathBuf>,
    #[arg(long)]
    pub clean: Option<PathBuf>,
    #[command(flatten)]
    pub synth: SynthFlags,
}

#[derive(Debug, Clone, Args)]
pub struct SynthFlags {
    /// Explicit channel taps, comma separated.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "synth_channel_order")]
    pub channel: Option<String>,
    /// Length of the generated default channel.
    #[arg(long)]
    pub synth_channel_order: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// `white` or `ar1:<rho>`.
    #[arg(long, default_value = "white")]
    pub noise: NoiseKind,
    /// `ar2` or `sine_mix`.
    #[arg(long, default_value = "ar2")]
    pub clean_kind: CleanKind,
    /// Clean-to-noise ratio of the primary, in dB.
    #[arg(long, default_value_t = -10.218, allow_hyphen_values = true)]
    pub input_snr: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = adaptive_anc::signal::DEFAULT_SAMPLE_RATE)]
    pub rate: u32,
}

impl SynthFlags {
    pub fn spec(&self) -> Result<SynthSpec, String> {
        let channel_taps = match &self.channel {
            Some(s) => parse_list(s)?,
            None => default_channel(self.synth_channel_order.unwrap_or(DEFAULT_TAPS), self.seed),
        };
        Ok(SynthSpec {
            channel_taps,
            num_samples: self.samples,
            noise_kind: self.noise,
            clean_kind: self.clean_kind,
            input_snr_db: self.input_snr,
            seed: self.seed,
            sample_rate: self.rate,
        })
    }

    /// `key=value` lines; the channel is echoed as typed when given.
    pub fn describe(&self, spec: &SynthSpec) -> String {
        let channel = match &self.channel {
            Some(s) => s.clone(),
            None => join(&spec.channel_taps),
        };
        format!(
            "channel={channel}\nsamples={}\nnoise={}\nclean_kind={}\ninput_snr_db={}\nseed={}\nsample_rate={}\n",
            spec.num_samples, spec.noise_kind, spec.clean_kind, spec.input_snr_db, spec.seed, spec.sample_rate
        )
    }
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("not a number: `{t}`")))
        .collect()
}

/// Inclusive `start:end[:step]`; empty when `start > end`.
pub fn parse_range(s: &str) -> Result<Vec<f64>, String> {
    let parts = parse_list(&s.replace(':', ","))?;
    let (start, end, step) = match parts[..] {
        [a, b] => (a, b, 1.0),
        [a, b, c] => (a, b, c),
        _ => return Err(format!("range must be start:end[:step], got `{s}`")),
    };
    if !step.is_finite() || step <= 0.0 {
        return Err(format!("range step must be positive, got {step}"));
    }
    let count = ((end - start) / step + 1e-9).floor();
    if count.is_nan() || count < 0.0 {
        return Ok(Vec::new());
    }
    Ok((0..=count as usize).map(|i| start + i as f64 * step).collect())
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
