//! Intensity comparison and recovery of the autocorrelation from
//! magnitude samples.
//!
//! `|C[x]|^2` is a nonnegative trigonometric polynomial of degree N-1 in
//! w/b, so 2N-1 samples at distinct frequencies in one period determine it
//! completely; solving the sample system returns the autocorrelation lags of
//! the chirped signal.

use num_complex::Complex64;

use crate::autocorr::Autocorrelation;
use crate::error::{LctError, Result};
use crate::params::LctParams;
use crate::signal::Signal;
use crate::transform::{forward, FrequencyGrid};

/// Condition-number estimate above which the sample system is rejected.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Sampled intensity `|C[x]|(w)` on an explicit frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityGrid {
    samples: Vec<(f64, f64)>,
}

impl IntensityGrid {
    /// Wraps explicit (frequency, magnitude) samples; magnitudes must be
    /// nonnegative and finite.
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        for &(omega, value) in &samples {
            if !omega.is_finite() || !value.is_finite() || value < 0.0 {
                return Err(LctError::InvalidGrid {
                    reason: format!("invalid intensity sample ({omega}, {value})"),
                });
            }
        }
        Ok(Self { samples })
    }

    /// Samples `|C[x]|` on the given grid.
    pub fn sample(x: &Signal, params: &LctParams, grid: &FrequencyGrid) -> Result<Self> {
        let spectrum = forward(x, params, grid)?;
        Ok(Self {
            samples: grid
                .points()
                .iter()
                .zip(&spectrum)
                .map(|(&omega, z)| (omega, z.norm()))
                .collect(),
        })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }
}

/// Outcome of an intensity comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchReport {
    /// Largest pointwise magnitude gap divided by the peak reference
    /// magnitude on the grid.
    pub max_rel_err: f64,
    pub pass: bool,
    pub grid_size: usize,
}

/// Compares `|C[x]|` and `|C[y]|` on `grid_size` equispaced points over one
/// period; passes iff the peak-relative mismatch stays within `tol`.
pub fn verify_intensity_match(
    x: &Signal,
    y: &Signal,
    params: &LctParams,
    grid_size: usize,
    tol: f64,
) -> Result<MatchReport> {
    let grid = FrequencyGrid::equispaced(params, grid_size)?;
    let sx = forward(x, params, &grid)?;
    let sy = forward(y, params, &grid)?;
    let peak = sx.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let max_rel_err = sx
        .iter()
        .zip(&sy)
        .map(|(p, q)| (p.norm() - q.norm()).abs())
        .fold(0.0, f64::max)
        / peak.max(f64::MIN_POSITIVE);
    Ok(MatchReport {
        max_rel_err,
        pass: max_rel_err <= tol,
        grid_size,
    })
}

/// Recovers the autocorrelation lags of the chirped signal from at least
/// 2N-1 intensity samples by solving
/// `sum_n a[n] exp(-i*w_k*n/b) = |C|(w_k)^2` in the least-squares sense.
pub fn intensity_from_samples(
    samples: &[(f64, f64)],
    n: usize,
    params: &LctParams,
) -> Result<Autocorrelation> {
    params.reject_degenerate()?;
    let unknowns = 2 * n - 1;
    if samples.len() < unknowns {
        return Err(LctError::InsufficientSamples {
            got: samples.len(),
            need: unknowns,
        });
    }
    let b = params.b();
    let rows: Vec<Vec<Complex64>> = samples
        .iter()
        .map(|&(omega, _)| {
            (0..unknowns)
                .map(|j| {
                    let lag = j as i64 - (n as i64 - 1);
                    Complex64::from_polar(1.0, -omega * lag as f64 / b)
                })
                .collect()
        })
        .collect();
    let rhs: Vec<Complex64> = samples
        .iter()
        .map(|&(_, value)| Complex64::new(value * value, 0.0))
        .collect();

    let mut lags = least_squares(rows, rhs)?;
    // enforce the Hermitian symmetry the noise may have disturbed
    for k in 0..n - 1 {
        let mirror = unknowns - 1 - k;
        let symmetric = 0.5 * (lags[k] + lags[mirror].conj());
        lags[k] = symmetric;
        lags[mirror] = symmetric.conj();
    }
    let center = lags[n - 1];
    lags[n - 1] = Complex64::new(center.re, 0.0);
    Autocorrelation::new(lags)
}

/// Predicted squared intensity at `omega` from recovered lags.
pub fn intensity_value(a: &Autocorrelation, omega: f64, params: &LctParams) -> Result<f64> {
    params.reject_degenerate()?;
    Ok(a.dtft(omega / params.b()).re)
}

/// Householder-QR least squares for a dense complex system; also estimates
/// the condition from the diagonal of R and rejects past [`CONDITION_LIMIT`].
fn least_squares(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let m = a.len();
    let n = a[0].len();
    debug_assert!(m >= n);

    for col in 0..n {
        // norm of the column below the diagonal
        let norm = a[col..m]
            .iter()
            .map(|row| row[col].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if norm == 0.0 {
            return Err(LctError::SingularSystem {
                condition: f64::INFINITY,
            });
        }
        let pivot = a[col][col];
        let phase = if pivot.norm() > 0.0 {
            pivot / pivot.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm;
        // v = x - alpha * e1
        let mut v: Vec<Complex64> = (col..m).map(|r| a[r][col]).collect();
        v[0] -= alpha;
        let vnorm_sqr: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm_sqr > 0.0 {
            // apply H = I - 2 v v^H / (v^H v) to the trailing block and rhs
            #[allow(clippy::needless_range_loop)]
            for target_col in col..n {
                let dot: Complex64 = v
                    .iter()
                    .enumerate()
                    .map(|(i, &vi)| vi.conj() * a[col + i][target_col])
                    .sum();
                let factor = 2.0 * dot / vnorm_sqr;
                for (i, &vi) in v.iter().enumerate() {
                    a[col + i][target_col] -= factor * vi;
                }
            }
            let dot: Complex64 = v
                .iter()
                .enumerate()
                .map(|(i, &vi)| vi.conj() * b[col + i])
                .sum();
            let factor = 2.0 * dot / vnorm_sqr;
            for (i, &vi) in v.iter().enumerate() {
                b[col + i] -= factor * vi;
            }
        }
        a[col][col] = alpha;
    }

    let diag_max = (0..n).map(|k| a[k][k].norm()).fold(0.0, f64::max);
    let diag_min = (0..n).map(|k| a[k][k].norm()).fold(f64::INFINITY, f64::min);
    let condition = diag_max / diag_min.max(f64::MIN_POSITIVE);
    if condition > CONDITION_LIMIT {
        return Err(LctError::SingularSystem { condition });
    }

    // back substitution on the upper-triangular block
    let mut x = vec![Complex64::ZERO; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for col in row + 1..n {
            acc -= a[row][col] * x[col];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}
