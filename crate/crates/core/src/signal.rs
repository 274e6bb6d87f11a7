//! Finitely supported complex sequences.

use num_complex::Complex64;

use crate::error::{LctError, Result};

/// Endpoint magnitudes below this threshold are rejected so that the stored
/// length is exactly the support length.
pub const SUPPORT_EPS: f64 = 1e-14;

/// A complex sequence supported on `start ..= start + N - 1` with nonzero
/// first and last samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    start: i64,
    values: Vec<Complex64>,
}

impl Signal {
    pub fn new(start: i64, values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(LctError::EmptySignal);
        }
        let first = values[0].norm();
        if first < SUPPORT_EPS {
            return Err(LctError::ZeroEndpoint {
                index: start,
                magnitude: first,
            });
        }
        let last = values[values.len() - 1].norm();
        if last < SUPPORT_EPS {
            return Err(LctError::ZeroEndpoint {
                index: start + values.len() as i64 - 1,
                magnitude: last,
            });
        }
        Ok(Self { start, values })
    }

    /// Single-sample signal `amplitude` at index `start`.
    pub fn delta(start: i64, amplitude: Complex64) -> Result<Self> {
        Self::new(start, vec![amplitude])
    }

    /// Skips endpoint validation; reserved for modulations by unimodular
    /// factors, which preserve the support window exactly.
    pub(crate) fn from_parts(start: i64, values: Vec<Complex64>) -> Self {
        debug_assert!(!values.is_empty());
        Self { start, values }
    }

    /// Index of the first stored sample.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Index of the last stored sample.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    /// Support length N.
    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Sample at absolute index n; zero outside the support window.
    pub fn value_at(&self, n: i64) -> Complex64 {
        if n < self.start || n > self.end() {
            Complex64::ZERO
        } else {
            self.values[(n - self.start) as usize]
        }
    }

    /// Iterates `(absolute index, sample)` over the support.
    pub fn iter_indexed(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let start = self.start;
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &z)| (start + k as i64, z))
    }

    /// Largest sample magnitude.
    pub fn peak(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Squared l2 norm of the samples.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }
}
