//! Time series container, WAV/CSV artifacts and synthetic scenarios.

mod csv;
mod synth;
mod wav;

pub use self::csv::{format_decimal, render_csv, write_csv, write_csv_rows, Column};
pub use self::synth::{
    convolve, default_channel, synth_anc_scenario, CleanKind, NoiseKind, Scenario, SynthSpec, PEAK_LEVEL,
};
pub use self::wav::{read_wav, write_wav, PCM_SCALE};

use std::io::Write;
use std::path::Path;

use crate::{Error, Result};

/// Sample rate used when nothing else is known.
pub const DEFAULT_SAMPLE_RATE: u32 = 8000;

/// A mono time series with a sample rate.
///
/// Holds at least one sample and never a NaN or infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate: u32,
}

impl Signal {
    pub fn new(samples: Vec<f64>, sample_rate: u32) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySignal);
        }
        if sample_rate == 0 {
            return Err(Error::config("sample rate must be positive"));
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self {
            samples,
            sample_rate,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate(&self) -> u32 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Mean of the squared samples.
    pub fn power(&self) -> f64 {
        self.samples.iter().map(|v| v * v).sum::<f64>() / self.samples.len() as f64
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Writes a file through a temporary sibling and renames it into place, so
/// a failed write never leaves a partial artifact behind.
pub fn write_atomic<F>(path: &Path, fill: F) -> Result<()>
where
    F: FnOnce(&mut std::io::BufWriter<&mut std::fs::File>) -> std::io::Result<()>,
{
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    {
        let mut w = std::io::BufWriter::new(tmp.as_file_mut());
        fill(&mut w).map_err(io_err)?;
        w.flush().map_err(io_err)?;
    }
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}
