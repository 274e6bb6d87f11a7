//! Quadrature checks of the continuous-time transform on compactly
//! supported, uniformly sampled functions.
//!
//! Functions are stored as samples on a uniform grid over their support
//! window and linearly interpolated in between; integrals use the composite
//! trapezoid rule.  This is enough to confirm, at desk scale, that the
//! rotated/shifted/reflected variants of a signal share its transform
//! magnitude and that the chirped autocorrelation evaluated on the imaginary
//! axis reproduces the squared Fourier intensity.

use num_complex::Complex64;

use crate::error::{LctError, Result};
use crate::params::LctParams;
use crate::transform::FrequencyGrid;

/// Complex samples of a compactly supported function on a uniform grid
/// including both endpoints of the support interval.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    t0: f64,
    t1: f64,
    samples: Vec<Complex64>,
    grid_step: f64,
}

impl SampledFunction {
    pub fn new(t0: f64, t1: f64, samples: Vec<Complex64>) -> Result<Self> {
        if !(t0.is_finite() && t1.is_finite() && t0 < t1) {
            return Err(LctError::InvalidSampledFunction {
                reason: format!("support window [{t0}, {t1}] is not a proper interval"),
            });
        }
        if samples.len() < 2 {
            return Err(LctError::InvalidSampledFunction {
                reason: "need at least two samples".into(),
            });
        }
        let grid_step = (t1 - t0) / (samples.len() - 1) as f64;
        Ok(Self {
            t0,
            t1,
            samples,
            grid_step,
        })
    }

    /// Samples a closure on `len` uniform grid points over [t0, t1].
    pub fn from_fn<F>(t0: f64, t1: f64, len: usize, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Complex64,
    {
        if len < 2 {
            return Err(LctError::InvalidSampledFunction {
                reason: "need at least two samples".into(),
            });
        }
        let step = (t1 - t0) / (len - 1) as f64;
        Self::new(t0, t1, (0..len).map(|j| f(t0 + j as f64 * step)).collect())
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn grid_step(&self) -> f64 {
        self.grid_step
    }

    /// Linear interpolation inside the window, zero outside.
    pub fn eval(&self, t: f64) -> Complex64 {
        if t < self.t0 || t > self.t1 {
            return Complex64::ZERO;
        }
        let position = (t - self.t0) / self.grid_step;
        let k = position.floor() as usize;
        if k + 1 >= self.samples.len() {
            return self.samples[self.samples.len() - 1];
        }
        let frac = position - k as f64;
        self.samples[k] * (1.0 - frac) + self.samples[k + 1] * frac
    }
}

/// The three intensity-preserving modifications of a compactly supported
/// function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InvarianceVariant {
    /// exp(i*alpha) * f
    Rotate(f64),
    /// exp(-i*a*t0*t/b) * f(t - t0)
    Shift(f64),
    /// exp(-i*a*t^2/b) * conj(f(-t))
    Reflect,
}

/// Composite-trapezoid approximation of the transform integral
/// `int f(t) K(w, t) dt` over the support window.
pub fn continuous_lct(
    f: &SampledFunction,
    params: &LctParams,
    omega: f64,
    nodes: usize,
) -> Result<Complex64> {
    params.reject_degenerate()?;
    if nodes < f.samples().len() {
        return Err(LctError::Quadrature {
            nodes,
            min: f.samples().len(),
        });
    }
    let step = (f.t1() - f.t0()) / (nodes - 1) as f64;
    let theta = params.theta_unchecked();
    let mut acc = Complex64::ZERO;
    for j in 0..nodes {
        let t = f.t0() + j as f64 * step;
        let weight = if j == 0 || j == nodes - 1 { 0.5 } else { 1.0 };
        acc += f.eval(t) * Complex64::from_polar(1.0, params.kernel_phase(omega, t)) * weight;
    }
    Ok(theta * acc * step)
}

/// Builds the modified variant analytically on the sample grid; the shift
/// moves the support window and the reflection flips it.
pub fn invariance_variant(
    f: &SampledFunction,
    params: &LctParams,
    variant: InvarianceVariant,
) -> Result<SampledFunction> {
    params.reject_degenerate()?;
    let a_over_b = params.a() / params.b();
    match variant {
        InvarianceVariant::Rotate(alpha) => {
            let phase = Complex64::from_polar(1.0, alpha);
            SampledFunction::new(
                f.t0(),
                f.t1(),
                f.samples().iter().map(|&z| phase * z).collect(),
            )
        }
        InvarianceVariant::Shift(t_shift) => {
            let samples = f
                .samples()
                .iter()
                .enumerate()
                .map(|(j, &z)| {
                    let s = f.t0() + j as f64 * f.grid_step() + t_shift;
                    z * Complex64::from_polar(1.0, -a_over_b * t_shift * s)
                })
                .collect();
            SampledFunction::new(f.t0() + t_shift, f.t1() + t_shift, samples)
        }
        InvarianceVariant::Reflect => {
            let len = f.samples().len();
            let samples = (0..len)
                .map(|j| {
                    let s = -(f.t1() - j as f64 * f.grid_step());
                    f.samples()[len - 1 - j].conj() * Complex64::from_polar(1.0, -a_over_b * s * s)
                })
                .collect();
            SampledFunction::new(-f.t1(), -f.t0(), samples)
        }
    }
}

/// Deviation report of a continuous-time check.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport {
    pub nodes: usize,
    /// (frequency, peak-relative deviation) per requested point.
    pub deviations: Vec<(f64, f64)>,
    pub max_rel_deviation: f64,
}

/// Compares |LCT f| against |LCT variant| pointwise on the grid and reports
/// the deviation relative to the peak magnitude of |LCT f|.
pub fn verify_invariance(
    f: &SampledFunction,
    params: &LctParams,
    variant: InvarianceVariant,
    grid: &FrequencyGrid,
    nodes: usize,
) -> Result<DeviationReport> {
    let modified = invariance_variant(f, params, variant)?;
    let original: Vec<f64> = grid
        .points()
        .iter()
        .map(|&omega| continuous_lct(f, params, omega, nodes).map(|z| z.norm()))
        .collect::<Result<_>>()?;
    let variant_mags: Vec<f64> = grid
        .points()
        .iter()
        .map(|&omega| continuous_lct(&modified, params, omega, nodes).map(|z| z.norm()))
        .collect::<Result<_>>()?;
    let peak = original
        .iter()
        .copied()
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let deviations: Vec<(f64, f64)> = grid
        .points()
        .iter()
        .zip(original.iter().zip(&variant_mags))
        .map(|(&omega, (x, y))| (omega, (x - y).abs() / peak))
        .collect();
    let max_rel_deviation = deviations.iter().map(|d| d.1).fold(0.0, f64::max);
    Ok(DeviationReport {
        nodes,
        deviations,
        max_rel_deviation,
    })
}

/// Checks `A[u](i*w) = |F[u](w)|^2` for the chirped signal
/// u = theta * exp(i*a*t^2/(2b)) * f by double quadrature of
/// `int int conj(u(s)) u(s+t) exp(-i*w*t) ds dt` against the single
/// quadrature of the Fourier integral, on a shared uniform grid.
pub fn autocorrelation_identity_check(
    f: &SampledFunction,
    params: &LctParams,
    omegas: &[f64],
    nodes: usize,
) -> Result<DeviationReport> {
    let theta = params.theta()?;
    if nodes < f.samples().len() {
        return Err(LctError::Quadrature {
            nodes,
            min: f.samples().len(),
        });
    }
    let step = (f.t1() - f.t0()) / (nodes - 1) as f64;
    let grid: Vec<f64> = (0..nodes).map(|j| f.t0() + j as f64 * step).collect();
    let u: Vec<Complex64> = grid
        .iter()
        .map(|&t| theta * Complex64::from_polar(1.0, params.chirp_phase(t)) * f.eval(t))
        .collect();

    // inner quadrature: rho(l*h) = int conj(u(s)) u(s+l*h) ds on the
    // grid-aligned overlap, so no interpolation enters here
    let mut rho = vec![Complex64::ZERO; nodes];
    for (lag, slot) in rho.iter_mut().enumerate() {
        let overlap = nodes - lag;
        if overlap < 2 {
            continue;
        }
        let mut acc = Complex64::ZERO;
        for k in 0..overlap {
            let weight = if k == 0 || k == overlap - 1 { 0.5 } else { 1.0 };
            acc += u[k].conj() * u[k + lag] * weight;
        }
        *slot = acc * step;
    }

    let fourier = |omega: f64| -> Complex64 {
        let mut acc = Complex64::ZERO;
        for (j, (&t, &uj)) in grid.iter().zip(&u).enumerate() {
            let weight = if j == 0 || j == nodes - 1 { 0.5 } else { 1.0 };
            acc += uj * Complex64::from_polar(1.0, -omega * t) * weight;
        }
        acc * step
    };

    let mut intensities = Vec::with_capacity(omegas.len());
    let mut lhs = Vec::with_capacity(omegas.len());
    for &omega in omegas {
        // outer quadrature over t in [-(t1-t0), t1-t0]; Hermitian symmetry
        // folds the negative lags
        let mut acc = rho[0];
        for (lag, &value) in rho.iter().enumerate().skip(1) {
            let weight = if lag == nodes - 1 { 0.5 } else { 1.0 };
            let term = value * Complex64::from_polar(1.0, -omega * lag as f64 * step);
            acc += 2.0 * weight * Complex64::new(term.re, 0.0);
        }
        lhs.push((acc * step).re);
        intensities.push(fourier(omega).norm_sqr());
    }

    let peak = intensities.iter().copied().fold(0.0, f64::max);
    let deviations: Vec<(f64, f64)> = omegas
        .iter()
        .zip(lhs.iter().zip(&intensities))
        .map(|(&omega, (l, r))| {
            let gap = (l - r).abs();
            let rel = if peak > 0.0 { gap / peak } else { gap };
            (omega, rel)
        })
        .collect();
    let max_rel_deviation = deviations.iter().map(|d| d.1).fold(0.0, f64::max);
    Ok(DeviationReport {
        nodes,
        deviations,
        max_rel_deviation,
    })
}
