//! File formats: signal and sampled-function JSON documents.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use lctphase::{LctError, SampledFunction, Signal};

use crate::CliError;

pub const FORMAT_VERSION: u32 = 1;

/// On-disk form of a finitely supported signal:
/// `{"format_version":1,"start":<int>,"values":[[re,im],...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SignalFile {
    pub format_version: u32,
    pub start: i64,
    pub values: Vec<[f64; 2]>,
}

impl SignalFile {
    pub fn from_signal(signal: &Signal) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            start: signal.start(),
            values: signal.values().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_signal(self, origin: &Path) -> Result<Signal, CliError> {
        check_version(self.format_version, origin)?;
        let values = self
            .values
            .iter()
            .map(|v| Complex64::new(v[0], v[1]))
            .collect();
        Signal::new(self.start, values).map_err(|e| match e {
            LctError::ZeroEndpoint { index, magnitude } => CliError::parse(format!(
                "{}: sample at index {index} has magnitude {magnitude:e}; the first and last entries must be nonzero",
                origin.display()
            )),
            LctError::EmptySignal => {
                CliError::parse(format!("{}: values must be nonempty", origin.display()))
            }
            other => CliError::parse(format!("{}: {other}", origin.display())),
        })
    }
}

/// On-disk form of a compactly supported sampled function:
/// `{"format_version":1,"t0":<real>,"t1":<real>,"values":[[re,im],...]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct SampledFunctionFile {
    pub format_version: u32,
    pub t0: f64,
    pub t1: f64,
    pub values: Vec<[f64; 2]>,
}

impl SampledFunctionFile {
    pub fn into_sampled(self, origin: &Path) -> Result<SampledFunction, CliError> {
        check_version(self.format_version, origin)?;
        let samples = self
            .values
            .iter()
            .map(|v| Complex64::new(v[0], v[1]))
            .collect();
        SampledFunction::new(self.t0, self.t1, samples)
            .map_err(|e| CliError::parse(format!("{}: {e}", origin.display())))
    }
}

fn check_version(version: u32, origin: &Path) -> Result<(), CliError> {
    if version != FORMAT_VERSION {
        return Err(CliError::parse(format!(
            "{}: unsupported format_version {version} (expected {FORMAT_VERSION})",
            origin.display()
        )));
    }
    Ok(())
}

pub fn load_signal(path: &Path) -> Result<Signal, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let file: SignalFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    file.into_signal(path)
}

pub fn load_sampled(path: &Path) -> Result<SampledFunction, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let file: SampledFunctionFile = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    file.into_sampled(path)
}

pub fn write_signal(path: &Path, signal: &Signal) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&SignalFile::from_signal(signal))
        .map_err(|e| CliError::parse(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}
