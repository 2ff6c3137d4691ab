//! 16-bit PCM mono WAV.

use std::path::Path;

use hound::{SampleFormat, WavReader, WavSpec, WavWriter};

use super::{write_atomic, Signal};
use crate::{Error, Result};

/// Full-scale divisor of the asymmetric 16-bit mapping.
pub const PCM_SCALE: f64 = 32768.0;

pub fn read_wav(path: impl AsRef<Path>) -> Result<Signal> {
    let path = path.as_ref();
    if !path.exists() {
        return Err(Error::MissingFile {
            path: path.to_path_buf(),
        });
    }
    let wav_err = |source| Error::Wav {
        path: path.to_path_buf(),
        source,
    };
    let reader = WavReader::open(path).map_err(wav_err)?;
    let spec = reader.spec();
    if spec.channels != 1 {
        return Err(Error::NonMono {
            path: path.to_path_buf(),
            channels: spec.channels,
        });
    }
    if spec.sample_format != SampleFormat::Int || spec.bits_per_sample != 16 {
        return Err(Error::UnsupportedFormat {
            path: path.to_path_buf(),
            bits: spec.bits_per_sample,
            format: match spec.sample_format {
                SampleFormat::Int => "integer",
                SampleFormat::Float => "float",
            },
        });
    }
    let samples = reader
        .into_samples::<i16>()
        .map(|s| s.map(|v| f64::from(v) / PCM_SCALE))
        .collect::<Result<Vec<_>, _>>()
        .map_err(wav_err)?;
    Signal::new(samples, spec.sample_rate)
}

/// Quantizes one amplitude; the flag is set when the value lay outside [-1, 1).
fn quantize(v: f64) -> (i16, bool) {
    let clipped = !(-1.0..1.0).contains(&v);
    let q = (v * PCM_SCALE).round().clamp(-PCM_SCALE, PCM_SCALE - 1.0);
    (q as i16, clipped)
}

fn hound_to_io(e: hound::Error) -> std::io::Error {
    match e {
        hound::Error::IoError(e) => e,
        other => std::io::Error::other(other),
    }
}

/// Writes `signal` as 16-bit PCM and returns the number of clipped samples.
pub fn write_wav(signal: &Signal, path: impl AsRef<Path>) -> Result<usize> {
    let path = path.as_ref();
    if signal.is_empty() {
        return Err(Error::EmptySignal);
    }
    let spec = WavSpec {
        channels: 1,
        sample_rate: signal.sample_rate(),
        bits_per_sample: 16,
        sample_format: SampleFormat::Int,
    };
    let mut clips = 0;
    write_atomic(path, |w| {
        let mut writer = WavWriter::new(w, spec).map_err(hound_to_io)?;
        for &v in signal.samples() {
            let (q, clipped) = quantize(v);
            clips += usize::from(clipped);
            writer.write_sample(q).map_err(hound_to_io)?;
        }
        writer.finalize().map_err(hound_to_io)
    })?;
    if clips > 0 {
        log::warn!("{}: clipped {clips} samples", path.display());
    }
    Ok(clips)
}
