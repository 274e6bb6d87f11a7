//! Parameter matrices of the linear canonical transform.
//!
//! A transform is described by a real matrix (a, b, c, d) with a*d - b*c = 1.
//! For b != 0 the kernel is
//!
//! ```text
//! K(w, t) = theta * exp(i/2 * (a/b * t^2 - 2/b * w*t + d/b * w^2)),
//! theta   = (2*pi*b)^(-1/2) * exp(-i*pi/4),
//! ```
//!
//! and the familiar Fourier, Fresnel, and fractional Fourier transforms are
//! the special cases built by [`LctParams::fourier`], [`LctParams::fresnel`],
//! and [`LctParams::frft`].

use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, TAU};

use crate::error::{LctError, Result};

/// Tolerance on |a*d - b*c - 1| accepted at construction.
pub const DET_TOL: f64 = 1e-12;

/// Below this |b| the matrix is tagged degenerate and all transform
/// operations reject it (the kernel collapses to a delta distribution).
pub const DEGENERATE_B_TOL: f64 = 1e-12;

/// Validated parameter matrix with the cached kernel constant theta.
///
/// For b < 0 the square root in theta is taken on the principal branch, so
/// |theta| = (2*pi*|b|)^(-1/2) always holds and only the global phase moves.
#[derive(Debug, Clone, Copy)]
pub struct LctParams {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    theta: Complex64,
}

/// The named parameter families exposed by the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    Fourier,
    /// Fresnel transform with parameter alpha != 0: (1, 1/(2*alpha), 0, 1).
    Fresnel(f64),
    /// Fractional Fourier transform of angle alpha with sin(alpha) != 0.
    Frft(f64),
}

impl LctParams {
    /// Validates the determinant and caches theta.
    ///
    /// A matrix with b = 0 is accepted but tagged degenerate; every transform
    /// operation rejects it with [`LctError::DegenerateParameter`].
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if !value.is_finite() {
                return Err(LctError::NonFiniteParameter { name, value });
            }
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() > DET_TOL {
            return Err(LctError::Determinant { det });
        }
        let theta = if b.abs() > DEGENERATE_B_TOL {
            // principal square root keeps |theta|^2 * 2*pi*|b| = 1
            Complex64::from_polar(1.0, -FRAC_PI_4) / Complex64::new(TAU * b, 0.0).sqrt()
        } else {
            Complex64::new(f64::NAN, f64::NAN)
        };
        Ok(Self { a, b, c, d, theta })
    }

    /// Builds one of the named parameter families.
    pub fn preset(kind: Preset) -> Result<Self> {
        match kind {
            Preset::Fourier => Self::fourier(),
            Preset::Fresnel(alpha) => Self::fresnel(alpha),
            Preset::Frft(alpha) => Self::frft(alpha),
        }
    }

    /// The Fourier matrix (0, 1, -1, 0).
    pub fn fourier() -> Result<Self> {
        Self::new(0.0, 1.0, -1.0, 0.0)
    }

    /// The Fresnel matrix (1, 1/(2*alpha), 0, 1); alpha must be nonzero.
    pub fn fresnel(alpha: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(LctError::NonFiniteParameter {
                name: "1/(2*alpha)",
                value: 1.0 / (2.0 * alpha),
            });
        }
        let params = Self::new(1.0, 1.0 / (2.0 * alpha), 0.0, 1.0)?;
        params.reject_degenerate()?;
        Ok(params)
    }

    /// The fractional Fourier matrix (cos a, sin a, -sin a, cos a);
    /// sin(alpha) = 0 (alpha a multiple of pi) is rejected because b = 0.
    pub fn frft(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(LctError::NonFiniteParameter {
                name: "alpha",
                value: alpha,
            });
        }
        let (sin, cos) = alpha.sin_cos();
        let params = Self::new(cos, sin, -sin, cos)?;
        params.reject_degenerate()?;
        Ok(params)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// True when |b| is below [`DEGENERATE_B_TOL`].
    pub fn is_degenerate(&self) -> bool {
        self.b.abs() <= DEGENERATE_B_TOL
    }

    /// Errors with [`LctError::DegenerateParameter`] when b is (numerically)
    /// zero; transform operations call this on entry.
    pub fn reject_degenerate(&self) -> Result<()> {
        if self.is_degenerate() {
            Err(LctError::DegenerateParameter { b: self.b })
        } else {
            Ok(())
        }
    }

    /// The kernel constant theta = (2*pi*b)^(-1/2) * exp(-i*pi/4).
    pub fn theta(&self) -> Result<Complex64> {
        self.reject_degenerate()?;
        Ok(self.theta)
    }

    /// Frequency period 2*pi*|b| of the discrete-time transform magnitude.
    pub fn period(&self) -> Result<f64> {
        self.reject_degenerate()?;
        Ok(TAU * self.b.abs())
    }

    /// Kernel value K(omega, t); the direct summation of this kernel is the
    /// reference path against which the chirped evaluation is tested.
    pub fn kernel(&self, omega: f64, t: f64) -> Result<Complex64> {
        self.reject_degenerate()?;
        Ok(self.theta * Complex64::from_polar(1.0, self.kernel_phase(omega, t)))
    }

    pub(crate) fn kernel_phase(&self, omega: f64, t: f64) -> f64 {
        0.5 * (self.a / self.b * t * t - 2.0 / self.b * omega * t + self.d / self.b * omega * omega)
    }

    /// Chirp phase a*t^2/(2b) at (absolute) position t.
    pub(crate) fn chirp_phase(&self, t: f64) -> f64 {
        0.5 * self.a / self.b * t * t
    }

    pub(crate) fn theta_unchecked(&self) -> Complex64 {
        self.theta
    }
}
