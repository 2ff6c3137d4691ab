//! Command-line front end: `run`, `sweep`, `synth` and `compare`.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 file error,
//! 3 filter divergence.

mod args;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use adaptive_anc::anc::{run_anc_with, sweep, AlgoConfig, AncResult, Algorithm, RunOptions, SnrSummary, SweepParam};
use adaptive_anc::signal::{
    format_decimal, read_wav, synth_anc_scenario, write_atomic, write_csv, write_csv_rows, write_wav, Scenario, Signal,
};
use adaptive_anc::Error;
use clap::Parser;
use rayon::prelude::*;

pub use args::{parse_range, Cli, Command};
use args::{CompareArgs, InputArgs, RunArgs, SweepArgs, SynthArgs};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_DIVERGED: i32 = 3;

/// A failed command: message for stderr plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Diverged { .. } => EXIT_DIVERGED,
            ref e if e.is_io() => EXIT_IO,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let command_line = args.iter().map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");
    let result = match cli.command {
        Command::Run(a) => cmd_run(&a, &command_line),
        Command::Sweep(a) => cmd_sweep(&a, &command_line),
        Command::Synth(a) => cmd_synth(&a, &command_line),
        Command::Compare(a) => cmd_compare(&a, &command_line),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

struct Inputs {
    scenario: Scenario,
    has_clean: bool,
    provenance: String,
}

fn load_inputs(input: &InputArgs) -> Result<Inputs, Failure> {
    match (&input.primary, &input.reference) {
        (Some(p), Some(r)) => {
            let primary = read_wav(p)?;
            let reference = read_wav(r)?;
            let clean = match &input.clean {
                Some(c) => Some(read_wav(c)?),
                None => None,
            };
            let mut provenance = format!("primary={}\nreference={}\n", p.display(), r.display());
            if let Some(c) = &input.clean {
                let _ = writeln!(provenance, "clean={}", c.display());
            }
            let has_clean = clean.is_some();
            let clean = match clean {
                Some(c) => c,
                None => Signal::new(vec![0.0; primary.len()], primary.sample_rate())?,
            };
            Ok(Inputs {
                scenario: Scenario {
                    clean,
                    primary,
                    reference,
                },
                has_clean,
                provenance,
            })
        }
        _ => {
            if input.clean.is_some() {
                return Err(Failure::usage("--clean needs --primary and --reference"));
            }
            let spec = input.synth.spec().map_err(Failure::usage)?;
            let scenario = synth_anc_scenario(&spec)?;
            Ok(Inputs {
                scenario,
                has_clean: true,
                provenance: format!("source=synthetic\n{}", input.synth.describe(&spec)),
            })
        }
    }
}

fn prepare_out(dir: &Path) -> CmdResult {
    std::fs::create_dir_all(dir).map_err(|source| {
        Failure::from(Error::Io {
            path: dir.to_path_buf(),
            source,
        })
    })
}

fn write_text(path: PathBuf, text: &str) -> CmdResult {
    write_atomic(&path, |f| std::io::Write::write_all(f, text.as_bytes()))?;
    Ok(())
}

fn provenance(command_line: &str, body: &str) -> String {
    format!(
        "command={command_line}\nversion={}\n{body}",
        env!("CARGO_PKG_VERSION")
    )
}

fn checked(cfg: &AlgoConfig) -> CmdResult {
    for w in cfg.validate()? {
        log::warn!("{w}");
    }
    Ok(())
}

fn fmt_snr(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_owned(), format_decimal)
}

fn cmd_run(a: &RunArgs, command_line: &str) -> CmdResult {
    let cfg = a.filter.config(a.algo, a.input.synth.seed);
    cfg.build()?;
    let inputs = load_inputs(&a.input)?;
    prepare_out(&a.out)?;
    let sc = &inputs.scenario;
    let clean = inputs.has_clean.then_some(&sc.clean);
    let opts = RunOptions::default();
    let result = run_anc_with(&cfg, &sc.primary, &sc.reference, clean, &opts)?;

    write_wav(&result.denoised, a.out.join("denoised.wav"))?;
    write_mse(&result, &a.out.join("mse.csv"))?;
    write_taps(&result, &a.out.join("taps.csv"))?;
    let body = format!("{}\n{}", cfg.describe(), inputs.provenance);
    write_text(a.out.join("config.txt"), &provenance(command_line, &body))?;

    let snr = result.snr;
    println!(
        "algo={} M={} snr_in={} snr_out={} snri={}",
        cfg.algorithm,
        cfg.taps,
        fmt_snr(snr.map(|s| s.snr_in)),
        fmt_snr(snr.map(|s| s.snr_out)),
        fmt_snr(snr.map(|s| s.snri)),
    );
    Ok(())
}

fn write_mse(r: &AncResult, path: &Path) -> adaptive_anc::Result<()> {
    let n: Vec<f64> = (0..r.mse_curve.len()).map(|i| i as f64).collect();
    write_csv(&[("n", &n), ("mse", &r.mse_curve), ("mse_smoothed", &r.mse_smoothed)], path)
}

fn write_taps(r: &AncResult, path: &Path) -> adaptive_anc::Result<()> {
    let m = r.final_taps.len();
    let mut header = vec!["sample".to_owned()];
    header.extend((0..m).map(|k| format!("h{k}")));
    let rows: Vec<Vec<String>> = r
        .coeff_trajectory
        .iter()
        .map(|s| {
            let mut row = vec![s.sample.to_string()];
            row.extend(s.taps.iter().map(|&v| format_decimal(v)));
            row
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_csv_rows(&header, &rows, path)
}

fn cmd_sweep(a: &SweepArgs, command_line: &str) -> CmdResult {
    let param: SweepParam = a.param.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
    let values = match (&a.range, &a.values) {
        (Some(r), _) => parse_range(r).map_err(Failure::usage)?,
        (None, Some(v)) => args::parse_list(v).map_err(Failure::usage)?,
        (None, None) => return Err(Failure::usage("sweep needs --range or --values")),
    };
    if values.is_empty() {
        return Err(Failure::usage("empty sweep range"));
    }
    let base = a.filter.config(a.algo, a.input.synth.seed);
    let inputs = load_inputs(&a.input)?;
    if !inputs.has_clean {
        return Err(Failure::usage("sweep requires --clean"));
    }
    prepare_out(&a.out)?;
    let rows = sweep(&base, param, &values, &inputs.scenario, &RunOptions::default(), true)?;

    let table: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            let (snri, snr_out) = match &row.outcome {
                Ok(s) => (format_decimal(s.snri), format_decimal(s.snr_out)),
                Err(msg) => {
                    let cell = if msg.contains("diverged") { "diverged" } else { "invalid" };
                    log::warn!("{param}={}: {msg}", format_decimal(row.value));
                    (cell.to_owned(), cell.to_owned())
                }
            };
            vec![format_decimal(row.value), snri, snr_out]
        })
        .collect();
    write_csv_rows(&["param_value", "snri", "snr_out"], &table, a.out.join("sweep.csv"))?;
    let body = format!("{}\nparam={param}\nvalues={}\n{}", base.describe(), join_values(&values), inputs.provenance);
    write_text(a.out.join("config.txt"), &provenance(command_line, &body))?;

    let best = rows
        .iter()
        .filter_map(|r| r.outcome.as_ref().ok().map(|s| (r.value, s)))
        .fold(None, |best: Option<(f64, &SnrSummary)>, (v, s)| match best {
            Some((_, b)) if b.snri >= s.snri => best,
            _ => Some((v, s)),
        });
    match best {
        Some((v, s)) => {
            println!(
                "argmax {param}={} snri={} snr_out={}",
                format_decimal(v),
                format_decimal(s.snri),
                format_decimal(s.snr_out)
            );
            Ok(())
        }
        None => Err(Failure::usage("no sweep value produced a result")),
    }
}

fn join_values(v: &[f64]) -> String {
    v.iter().map(|&x| format_decimal(x)).collect::<Vec<_>>().join(",")
}

fn cmd_synth(a: &SynthArgs, command_line: &str) -> CmdResult {
    let spec = a.synth.spec().map_err(Failure::usage)?;
    let sc = synth_anc_scenario(&spec)?;
    prepare_out(&a.out)?;
    write_wav(&sc.clean, a.out.join("clean.wav"))?;
    write_wav(&sc.primary, a.out.join("primary.wav"))?;
    write_wav(&sc.reference, a.out.join("reference.wav"))?;
    write_text(a.out.join("spec.txt"), &provenance(command_line, &a.synth.describe(&spec)))?;
    println!("wrote {} samples to {}", spec.num_samples, a.out.display());
    Ok(())
}

fn cmd_compare(a: &CompareArgs, command_line: &str) -> CmdResult {
    if a.input.primary.is_some() && a.input.clean.is_none() {
        return Err(Failure::usage("compare requires --clean"));
    }
    let inputs = load_inputs(&a.input)?;
    prepare_out(&a.out)?;
    let sc = &inputs.scenario;
    let configs: Vec<AlgoConfig> = Algorithm::ALL
        .iter()
        .map(|&algo| AlgoConfig {
            seed: a.input.synth.seed,
            ..AlgoConfig::new(algo, a.m)
        })
        .collect();
    for cfg in &configs {
        checked(cfg)?;
    }
    let opts = RunOptions::default();
    let outcomes: Vec<Result<f64, Error>> = configs
        .par_iter()
        .map(|cfg| {
            run_anc_with(cfg, &sc.primary, &sc.reference, Some(&sc.clean), &opts)
                .map(|r| r.snr.expect("clean supplied").snri)
        })
        .collect();

    let mut rows = Vec::with_capacity(configs.len());
    let mut succeeded = 0;
    for (cfg, out) in configs.iter().zip(outcomes) {
        let cell = match out {
            Ok(v) => {
                succeeded += 1;
                format_decimal(v)
            }
            Err(Error::Diverged { sample }) => {
                log::warn!("{} diverged at sample {sample}", cfg.algorithm);
                "diverged".to_owned()
            }
            Err(e) => return Err(e.into()),
        };
        println!("{},{}", cfg.algorithm, cell);
        rows.push(vec![cfg.algorithm.to_string(), cell]);
    }
    write_csv_rows(&["algorithm", "snri"], &rows, a.out.join("table.csv"))?;
    let body = configs.iter().map(|c| c.describe() + "\n").collect::<String>() + &inputs.provenance;
    write_text(a.out.join("config.txt"), &provenance(command_line, &body))?;
    if succeeded == 0 {
        return Err(Failure {
            code: EXIT_DIVERGED,
            message: "every algorithm diverged".to_owned(),
        });
    }
    Ok(())
}
