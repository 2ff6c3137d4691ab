use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("file not found: {}", path.display())]
    MissingFile { path: PathBuf },

    #[error("non-mono WAV ({channels} channels): {}", path.display())]
    NonMono { path: PathBuf, channels: u16 },

    #[error("unsupported sample format ({bits}-bit {format}): {}", path.display())]
    UnsupportedFormat {
        path: PathBuf,
        bits: u16,
        format: &'static str,
    },

    #[error("malformed WAV {}: {source}", path.display())]
    Wav {
        path: PathBuf,
        #[source]
        source: hound::Error,
    },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("empty signal")]
    EmptySignal,

    #[error("non-finite sample at index {index}")]
    NonFiniteSample { index: usize },

    #[error("ragged columns: `{name}` has {len} rows, expected {expected}")]
    RaggedColumns {
        name: String,
        len: usize,
        expected: usize,
    },

    #[error("length mismatch: {what} has {got} samples, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("filter diverged at sample {sample}")]
    Diverged { sample: usize },

    #[error("projection matrix is not positive definite (pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },

    #[error("silent reference segment")]
    SilentReference,
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    /// True for errors caused by reading or writing files.
    pub fn is_io(&self) -> bool {
        matches!(
            self,
            Error::MissingFile { .. }
                | Error::NonMono { .. }
                | Error::UnsupportedFormat { .. }
                | Error::Wav { .. }
                | Error::Io { .. }
        )
    }
}
