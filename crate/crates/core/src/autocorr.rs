//! Autocorrelation signal and autocorrelation polynomial.
//!
//! For a signal u of support length N the autocorrelation signal is
//!
//! ```text
//! a[u][n] = sum_k conj(u[k]) * u[k+n],        n = -N+1 ... N-1,
//! ```
//!
//! so that its discrete-time Fourier transform is the squared intensity
//! `|F[u]|^2`.  The autocorrelation polynomial collects the lags as
//! `P(z) = z^(N-1) * sum_n a[u][n] z^n`, an ordinary polynomial of degree
//! 2N-2 whose coefficient sequence is a conjugate palindrome; its roots come
//! in conjugate-reciprocal pairs (g, 1/conj(g)) straddling the unit circle.

use num_complex::Complex64;

use crate::error::{LctError, Result};
use crate::signal::Signal;

/// Relative tolerance for the Hermitian symmetry check at construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Relative threshold below which the polynomial's leading coefficient is
/// considered degenerate.
pub const LEADING_COEFF_TOL: f64 = 1e-13;

/// Hermitian lag sequence a[-N+1 ..= N-1] stored in lag order.
#[derive(Debug, Clone, PartialEq)]
pub struct Autocorrelation {
    values: Vec<Complex64>,
    n: usize,
}

impl Autocorrelation {
    /// Builds from values listed by lag, `values[k]` holding lag k - (N-1).
    /// The length must be odd and the sequence Hermitian to `1e-12 * max`.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() || values.len().is_multiple_of(2) {
            return Err(LctError::NotHermitian {
                lag: values.len() as i64,
            });
        }
        let n = values.len().div_ceil(2);
        let peak = values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let tol = HERMITIAN_TOL * peak.max(f64::MIN_POSITIVE);
        for k in 0..values.len() {
            let mirror = values.len() - 1 - k;
            if (values[k] - values[mirror].conj()).norm() > tol {
                return Err(LctError::NotHermitian {
                    lag: k as i64 - (n as i64 - 1),
                });
            }
        }
        Ok(Self { values, n })
    }

    /// Support length N of the underlying signal.
    pub fn support_len(&self) -> usize {
        self.n
    }

    /// Value at lag k (zero outside -N+1 ..= N-1).
    pub fn lag(&self, k: i64) -> Complex64 {
        let idx = k + self.n as i64 - 1;
        if idx < 0 || idx >= self.values.len() as i64 {
            Complex64::ZERO
        } else {
            self.values[idx as usize]
        }
    }

    /// Values in lag order, index 0 holding lag -(N-1).
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn iter_lags(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let offset = self.n as i64 - 1;
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &z)| (k as i64 - offset, z))
    }

    /// DTFT of the lag sequence at frequency nu: `sum_n a[n] exp(-i*nu*n)`.
    /// For an autocorrelation this equals `|F[u](nu)|^2` (real, nonnegative).
    pub fn dtft(&self, nu: f64) -> Complex64 {
        self.iter_lags()
            .map(|(k, z)| z * Complex64::from_polar(1.0, -nu * k as f64))
            .sum()
    }
}

/// `a[u][n] = sum_k conj(u[k]) * u[k+n]`; depends on u only up to translation
/// because the absolute offsets cancel inside the sum.
pub fn autocorrelation(u: &Signal) -> Autocorrelation {
    let n = u.support_len();
    let values = u.values();
    let mut lags = vec![Complex64::ZERO; 2 * n - 1];
    // nonnegative lags, then mirror so Hermitian symmetry is exact
    for lag in 0..n {
        let sum: Complex64 = (0..n - lag)
            .map(|k| values[k].conj() * values[k + lag])
            .sum();
        lags[n - 1 + lag] = sum;
        lags[n - 1 - lag] = sum.conj();
    }
    Autocorrelation { values: lags, n }
}

/// Coefficients c_0 ..= c_(2N-2) of P(z) = sum_k c_k z^k, c_k = a[k-N+1].
#[derive(Debug, Clone, PartialEq)]
pub struct AutocorrPolynomial {
    coeffs: Vec<Complex64>,
}

impl AutocorrPolynomial {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Support length N of the signal the polynomial came from.
    pub fn support_len(&self) -> usize {
        self.coeffs.len() / 2 + 1
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * z + c)
    }
}

/// Reindexes the lags into polynomial coefficients and checks that the
/// leading coefficient did not collapse numerically.
pub fn autocorr_polynomial(a: &Autocorrelation) -> Result<AutocorrPolynomial> {
    let peak = a.values().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let leading = a.values()[a.values().len() - 1].norm();
    if leading < LEADING_COEFF_TOL * peak {
        return Err(LctError::DegenerateLeadingCoeff { magnitude: leading });
    }
    Ok(AutocorrPolynomial {
        coeffs: a.values().to_vec(),
    })
}
