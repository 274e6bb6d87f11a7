//! Forward and inverse discrete-time linear canonical transform.
//!
//! The forward transform of a finitely supported signal x is
//!
//! ```text
//! C[x](w) = sum_n x[n] K(w, n)
//!         = theta * exp(i*d*w^2/(2b)) * sum_n x[n] * exp(i*a*n^2/(2b)) * exp(-i*w*n/b),
//! ```
//!
//! i.e. a chirp-modulated discrete-time Fourier transform evaluated at w/b.
//! [`forward`] uses the chirped evaluation; the direct kernel sum through
//! [`LctParams::kernel`] serves as the independent reference in the tests.
//! The inverse integrates the spectrum against the conjugated kernel over one
//! period [-pi*|b|, pi*|b|]; that integral is exactly normalized because
//! |theta|^2 * 2*pi*|b| = 1.

use num_complex::Complex64;
use std::ops::RangeInclusive;

use crate::error::{LctError, Result};
use crate::params::LctParams;
use crate::signal::Signal;

/// Magnitudes below `1e-10 * peak` are trimmed from the ends of an inverse
/// transform so quadrature noise cannot inflate the support length.
pub const INVERSE_TRIM_REL: f64 = 1e-10;

/// Strictly increasing frequency samples, by default confined to one period
/// [-pi*|b|, pi*|b|) of the ambient parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    period_hint: f64,
    extended: bool,
}

impl FrequencyGrid {
    /// `count` equispaced points covering [-pi*|b|, pi*|b|).
    pub fn equispaced(params: &LctParams, count: usize) -> Result<Self> {
        let period = params.period()?;
        if count == 0 {
            return Err(LctError::InvalidGrid {
                reason: "grid needs at least one point".into(),
            });
        }
        let step = period / count as f64;
        let points = (0..count)
            .map(|k| -0.5 * period + k as f64 * step)
            .collect();
        Ok(Self {
            points,
            period_hint: period,
            extended: false,
        })
    }

    /// Validates that `points` are strictly increasing and inside one period.
    pub fn from_points(params: &LctParams, points: Vec<f64>) -> Result<Self> {
        let period = params.period()?;
        Self::check_increasing(&points)?;
        let half = 0.5 * period;
        for &w in &points {
            if !(-half..half).contains(&w) {
                return Err(LctError::InvalidGrid {
                    reason: format!("point {w} outside one period [{}, {})", -half, half),
                });
            }
        }
        Ok(Self {
            points,
            period_hint: period,
            extended: false,
        })
    }

    /// Strictly increasing points without the one-period restriction.
    pub fn extended(params: &LctParams, points: Vec<f64>) -> Result<Self> {
        let period = params.period()?;
        Self::check_increasing(&points)?;
        Ok(Self {
            points,
            period_hint: period,
            extended: true,
        })
    }

    fn check_increasing(points: &[f64]) -> Result<()> {
        if points.is_empty() {
            return Err(LctError::InvalidGrid {
                reason: "grid needs at least one point".into(),
            });
        }
        for pair in points.windows(2) {
            // NaN also fails here
            if pair[1].partial_cmp(&pair[0]) != Some(std::cmp::Ordering::Greater) {
                return Err(LctError::InvalidGrid {
                    reason: format!(
                        "points not strictly increasing at {} -> {}",
                        pair[0], pair[1]
                    ),
                });
            }
        }
        if points.iter().any(|w| !w.is_finite()) {
            return Err(LctError::InvalidGrid {
                reason: "non-finite grid point".into(),
            });
        }
        Ok(())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// 2*pi*|b| of the parameters the grid was built for.
    pub fn period_hint(&self) -> f64 {
        self.period_hint
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }
}

/// `u[n] = theta * x[n] * exp(i*a*n^2/(2b))` with n the absolute index.
///
/// This is the sequence whose plain Fourier intensity equals the linear
/// canonical intensity of x, and the input to all autocorrelation machinery.
pub fn chirp_modulate(x: &Signal, params: &LctParams) -> Result<Signal> {
    let theta = params.theta()?;
    let values = x
        .iter_indexed()
        .map(|(n, z)| theta * z * Complex64::from_polar(1.0, params.chirp_phase(n as f64)))
        .collect();
    Signal::new(x.start(), values)
}

/// Evaluates `C[x]` on every grid point via the chirped evaluation above.
pub fn forward(x: &Signal, params: &LctParams, grid: &FrequencyGrid) -> Result<Vec<Complex64>> {
    params.reject_degenerate()?;
    let theta = params.theta_unchecked();
    // chirped samples x[n] * exp(i*a*n^2/(2b)), computed once per signal
    let chirped: Vec<(f64, Complex64)> = x
        .iter_indexed()
        .map(|(n, z)| {
            let n = n as f64;
            (n, z * Complex64::from_polar(1.0, params.chirp_phase(n)))
        })
        .collect();
    let b = params.b();
    let d = params.d();
    Ok(grid
        .points()
        .iter()
        .map(|&omega| {
            let prefactor = theta * Complex64::from_polar(1.0, 0.5 * d / b * omega * omega);
            let dtft: Complex64 = chirped
                .iter()
                .map(|&(n, u)| u * Complex64::from_polar(1.0, -omega * n / b))
                .sum();
            prefactor * dtft
        })
        .collect())
}

/// Single-frequency convenience wrapper around the chirped evaluation.
pub fn forward_at(x: &Signal, params: &LctParams, omega: f64) -> Result<Complex64> {
    params.reject_degenerate()?;
    let theta = params.theta_unchecked();
    let b = params.b();
    let prefactor = theta * Complex64::from_polar(1.0, 0.5 * params.d() / b * omega * omega);
    let dtft: Complex64 = x
        .iter_indexed()
        .map(|(n, z)| {
            let n = n as f64;
            z * Complex64::from_polar(1.0, params.chirp_phase(n) - omega * n / b)
        })
        .sum();
    Ok(prefactor * dtft)
}

/// Recovers samples on `window` from a spectrum by composite-trapezoid
/// quadrature of `spectrum(w) * conj(K(w, n))` over one period, then trims
/// below `1e-10 * peak` at both ends.
///
/// `nodes` counts quadrature points including both interval endpoints and
/// must be at least twice the window length.
pub fn inverse<F>(
    spectrum: F,
    params: &LctParams,
    window: RangeInclusive<i64>,
    nodes: usize,
) -> Result<Signal>
where
    F: Fn(f64) -> Complex64,
{
    params.reject_degenerate()?;
    let (lo, hi) = (*window.start(), *window.end());
    if lo > hi {
        return Err(LctError::InvalidGrid {
            reason: format!("inverse window {lo}..={hi} is empty"),
        });
    }
    let window_len = (hi - lo + 1) as usize;
    let min_nodes = 2 * window_len;
    if nodes < min_nodes {
        return Err(LctError::Quadrature {
            nodes,
            min: min_nodes,
        });
    }

    let period = params.period()?;
    let step = period / (nodes - 1) as f64;
    let samples: Vec<(f64, Complex64, f64)> = (0..nodes)
        .map(|j| {
            let omega = -0.5 * period + j as f64 * step;
            let weight = if j == 0 || j == nodes - 1 {
                0.5 * step
            } else {
                step
            };
            (omega, spectrum(omega), weight)
        })
        .collect();

    let mut values = Vec::with_capacity(window_len);
    for n in lo..=hi {
        let mut acc = Complex64::ZERO;
        for &(omega, s, weight) in &samples {
            let kernel = params.theta_unchecked().conj()
                * Complex64::from_polar(1.0, -params.kernel_phase(omega, n as f64));
            acc += s * kernel * weight;
        }
        values.push(acc);
    }

    let peak = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let threshold = INVERSE_TRIM_REL * peak;
    let first = values.iter().position(|z| z.norm() > threshold);
    let last = values.iter().rposition(|z| z.norm() > threshold);
    match (first, last) {
        (Some(i), Some(j)) if i <= j => Signal::new(lo + i as i64, values[i..=j].to_vec()),
        _ => Err(LctError::EmptySignal),
    }
}
