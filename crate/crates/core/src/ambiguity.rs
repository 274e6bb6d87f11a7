//! Trivial ambiguities and exhaustive enumeration of the solution set of
//! phase retrieval from linear canonical intensities.
//!
//! Every signal y with `|C[y]| = |C[x]|` satisfies
//!
//! ```text
//! F[theta * exp(i*a*n^2/(2b)) * y](w)
//!     = exp(i*(alpha + w*n0)) * sqrt(|a[u][N-1]| * prod_j |beta_j|^(-1))
//!       * prod_j (exp(-i*w) - beta_j),
//! ```
//!
//! where u is the chirped original, `a[u]` its autocorrelation, and each
//! beta_j is chosen from a conjugate-reciprocal root pair of the
//! autocorrelation polynomial.  Enumerating the 2^(free pairs) selections
//! with alpha = 0, n0 = 0 and deduplicating modulo the trivial ambiguities
//! yields the complete list of solution classes.

use num_complex::Complex64;
use std::cmp::Ordering;

use crate::autocorr::{autocorr_polynomial, autocorrelation, Autocorrelation};
use crate::error::{LctError, Result};
use crate::params::LctParams;
use crate::roots::{find_roots, pair_roots, polish_multiple_roots, PAIRING_TOL, ROOT_RESIDUAL_TOL};
use crate::signal::Signal;
use crate::transform::{chirp_modulate, forward, FrequencyGrid};

/// Componentwise fuzz for comparing canonical forms.
pub const CANONICAL_FUZZ: f64 = 1e-10;

/// One member of the solution set together with the choices producing it.
#[derive(Debug, Clone)]
pub struct AmbiguitySolution {
    /// The reconstructed signal (alpha = 0, n0 = 0 representative).
    pub signal: Signal,
    /// Bitmask over the free pairs; bit j set picks the mirror member.
    pub selection: u64,
    /// Shift parameter used in the construction.
    pub n0: i64,
    /// Rotation parameter used in the construction.
    pub alpha: f64,
    /// Shift/phase/reflection-normalized representative of the class.
    pub canonical: Signal,
}

/// Knobs for [`enumerate_solutions_with`].
#[derive(Debug, Clone, Copy)]
pub struct EnumerationOptions {
    /// Peak-relative intensity mismatch accepted for an enumerated solution.
    pub intensity_tol: f64,
    /// Tolerance handed to [`pair_roots`].
    pub pairing_tol: f64,
    /// Residual tolerance handed to [`find_roots`].
    pub root_tol: f64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            intensity_tol: 1e-8,
            pairing_tol: PAIRING_TOL,
            root_tol: ROOT_RESIDUAL_TOL,
        }
    }
}

/// Rotated signal exp(i*alpha) * x; same linear canonical intensity.
pub fn trivial_rotate(x: &Signal, alpha: f64) -> Signal {
    let phase = Complex64::from_polar(1.0, alpha);
    let values = x.values().iter().map(|&z| phase * z).collect();
    Signal::from_parts(x.start(), values)
}

/// Shifted signal exp(-i*a*n0*n/b) * x[n - n0]; same intensity.
pub fn trivial_shift(x: &Signal, n0: i64, params: &LctParams) -> Result<Signal> {
    params.reject_degenerate()?;
    let rate = params.a() / params.b() * n0 as f64;
    let values = x
        .iter_indexed()
        .map(|(m, z)| {
            let n = (m + n0) as f64;
            z * Complex64::from_polar(1.0, -rate * n)
        })
        .collect();
    Ok(Signal::from_parts(x.start() + n0, values))
}

/// Reflected signal exp(-i*a*n^2/b) * conj(x[-n]); same intensity.
/// Applying it twice gives back x exactly.
pub fn trivial_reflect(x: &Signal, params: &LctParams) -> Result<Signal> {
    params.reject_degenerate()?;
    let rate = params.a() / params.b();
    let mut values: Vec<Complex64> = x
        .iter_indexed()
        .map(|(m, z)| {
            let n = -m as f64;
            z.conj() * Complex64::from_polar(1.0, -rate * n * n)
        })
        .collect();
    values.reverse();
    Ok(Signal::from_parts(-x.end(), values))
}

fn fuzzy_cmp(a: f64, b: f64) -> Ordering {
    if (a - b).abs() <= CANONICAL_FUZZ {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

/// Lexicographic order on the flattened (re, im) sample sequence with
/// [`CANONICAL_FUZZ`] equality; the dedup and output order of
/// [`enumerate_solutions`].
pub fn canonical_cmp(a: &Signal, b: &Signal) -> Ordering {
    let mut order = a.support_len().cmp(&b.support_len());
    if order != Ordering::Equal {
        return order;
    }
    for (x, y) in a.values().iter().zip(b.values()) {
        order = fuzzy_cmp(x.re, y.re).then_with(|| fuzzy_cmp(x.im, y.im));
        if order != Ordering::Equal {
            return order;
        }
    }
    Ordering::Equal
}

fn normalize_shift_and_phase(x: &Signal, params: &LctParams) -> Result<Signal> {
    let at_origin = trivial_shift(x, -x.start(), params)?;
    let phase = at_origin.values()[0].arg();
    Ok(trivial_rotate(&at_origin, -phase))
}

/// Canonical representative of the trivial-ambiguity orbit of x: start 0,
/// first sample positive real, and the lexicographically smaller of that
/// form and the equally normalized reflection.
pub fn canonicalize(x: &Signal, params: &LctParams) -> Result<Signal> {
    let direct = normalize_shift_and_phase(x, params)?;
    let reflected = normalize_shift_and_phase(&trivial_reflect(x, params)?, params)?;
    Ok(match canonical_cmp(&direct, &reflected) {
        Ordering::Greater => reflected,
        _ => direct,
    })
}

/// Positive amplitude `sqrt(|a[N-1]| * prod_j |beta_j|^(-1))` attached to a
/// beta selection.
pub fn solution_scale(a: &Autocorrelation, betas: &[Complex64]) -> Result<f64> {
    let mut product = a.lag(a.support_len() as i64 - 1).norm();
    for (index, beta) in betas.iter().enumerate() {
        let modulus = beta.norm();
        if modulus < 1e-14 {
            return Err(LctError::ZeroRoot { index });
        }
        product /= modulus;
    }
    Ok(product.sqrt())
}

/// Expands the solution form into a signal:
/// prod_j (exp(-i*w) - beta_j) = sum_k c_k exp(-i*w*k), then
/// `u[k - n0] = scale * exp(i*alpha) * c_k` and `y[n] = u[n] *
/// exp(-i*a*n^2/(2b)) / theta`.  The result has support length
/// betas.len() + 1 exactly.
pub fn build_solution(
    betas: &[Complex64],
    scale: f64,
    alpha: f64,
    n0: i64,
    params: &LctParams,
) -> Result<Signal> {
    let theta = params.theta()?;
    // iterated convolution with the linear factors (-beta_j, 1)
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &beta in betas {
        let mut next = vec![Complex64::ZERO; coeffs.len() + 1];
        for (k, &ck) in coeffs.iter().enumerate() {
            next[k] -= beta * ck;
            next[k + 1] += ck;
        }
        coeffs = next;
    }
    let rotation = Complex64::from_polar(scale, alpha);
    let start = -n0;
    let values = coeffs
        .iter()
        .enumerate()
        .map(|(k, &ck)| {
            let n = (start + k as i64) as f64;
            rotation * ck * Complex64::from_polar(1.0, -params.chirp_phase(n)) / theta
        })
        .collect();
    Signal::new(start, values)
}

/// Peak magnitude of the spectrum values.
fn spectrum_peak(spectrum: &[Complex64]) -> f64 {
    spectrum.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn intensity_mismatch(reference: &[Complex64], candidate: &[Complex64]) -> f64 {
    let peak = spectrum_peak(reference).max(f64::MIN_POSITIVE);
    reference
        .iter()
        .zip(candidate)
        .map(|(x, y)| (x.norm() - y.norm()).abs())
        .fold(0.0, f64::max)
        / peak
}

/// Complete solution set of "recover x from `|C[x]|`" with default options.
pub fn enumerate_solutions(
    x: &Signal,
    params: &LctParams,
    tol: f64,
) -> Result<Vec<AmbiguitySolution>> {
    enumerate_solutions_with(
        x,
        params,
        &EnumerationOptions {
            intensity_tol: tol,
            ..EnumerationOptions::default()
        },
    )
}

/// Complete solution set, one representative per trivial-ambiguity class,
/// sorted by canonical form.
///
/// Candidates are built for every root selection with alpha = 0, n0 = 0,
/// verified against `|C[x]|` on a 4N-point grid, and deduplicated through
/// their canonical forms.
pub fn enumerate_solutions_with(
    x: &Signal,
    params: &LctParams,
    options: &EnumerationOptions,
) -> Result<Vec<AmbiguitySolution>> {
    let u = chirp_modulate(x, params)?;
    let a = autocorrelation(&u);
    let n = x.support_len();

    let betas_per_selection: Vec<(u64, Vec<Complex64>)> = if n == 1 {
        vec![(0, Vec::new())]
    } else {
        let poly = autocorr_polynomial(&a)?;
        let roots = find_roots(&poly, options.root_tol)?;
        let mut root_set = pair_roots(&roots, options.pairing_tol)?;
        polish_multiple_roots(&poly, &mut root_set);
        (0..root_set.selection_count())
            .map(|mask| (mask, root_set.betas_for_selection(mask)))
            .collect()
    };

    let grid = FrequencyGrid::equispaced(params, 4 * n)?;
    let reference = forward(x, params, &grid)?;

    let mut solutions: Vec<AmbiguitySolution> = Vec::new();
    for (mask, betas) in betas_per_selection {
        let scale = solution_scale(&a, &betas)?;
        let candidate = build_solution(&betas, scale, 0.0, 0, params)?;
        let candidate_spectrum = forward(&candidate, params, &grid)?;
        if intensity_mismatch(&reference, &candidate_spectrum) > options.intensity_tol {
            continue;
        }
        let canonical = canonicalize(&candidate, params)?;
        let duplicate = solutions
            .iter()
            .any(|s| canonical_cmp(&s.canonical, &canonical) == Ordering::Equal);
        if !duplicate {
            solutions.push(AmbiguitySolution {
                signal: candidate,
                selection: mask,
                n0: 0,
                alpha: 0.0,
                canonical,
            });
        }
    }

    // exact lexicographic order here: the fuzzy comparison is for equality
    // only and is not a total order
    solutions.sort_by(|p, q| {
        exact_cmp(&p.canonical, &q.canonical).then_with(|| p.selection.cmp(&q.selection))
    });
    Ok(solutions)
}

fn exact_cmp(a: &Signal, b: &Signal) -> Ordering {
    let mut order = a.support_len().cmp(&b.support_len());
    if order != Ordering::Equal {
        return order;
    }
    for (x, y) in a.values().iter().zip(b.values()) {
        order = x.re.total_cmp(&y.re).then_with(|| x.im.total_cmp(&y.im));
        if order != Ordering::Equal {
            return order;
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_intensity_gap(x: &Signal, y: &Signal, p: &LctParams, count: usize) -> f64 {
        let grid = FrequencyGrid::equispaced(p, count).unwrap();
        let sx = forward(x, p, &grid).unwrap();
        let sy = forward(y, p, &grid).unwrap();
        intensity_mismatch(&sx, &sy)
    }

    #[test]
    fn rotate_by_pi_negates_delta() {
        let x = Signal::delta(0, c(1.0, 0.0)).unwrap();
        let y = trivial_rotate(&x, PI);
        assert!((y.value_at(0) - c(-1.0, 0.0)).norm() < 1e-15);
        let p = LctParams::frft(0.6).unwrap();
        assert!(max_intensity_gap(&x, &y, &p, 32) < 1e-14);
    }

    #[test]
    fn fourier_shift_is_plain_translation() {
        let p = LctParams::fourier().unwrap();
        let x = Signal::new(0, vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let y = trivial_shift(&x, 3, &p).unwrap();
        assert_eq!(y.start(), 3);
        assert!((y.value_at(3) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((y.value_at(4) - c(2.0, 0.0)).norm() < 1e-15);
        assert!(max_intensity_gap(&x, &y, &p, 32) < 1e-14);
    }

    #[test]
    fn reflect_preserves_intensity() {
        let p = LctParams::frft(FRAC_PI_4).unwrap();
        let x = Signal::new(0, vec![c(1.0, 0.0), c(0.0, 2.0)]).unwrap();
        let y = trivial_reflect(&x, &p).unwrap();
        assert_eq!(y.start(), -1);
        assert!(max_intensity_gap(&x, &y, &p, 64) < 1e-12);
    }

    #[test]
    fn reflect_is_an_involution() {
        let p = LctParams::new(0.6, -1.4, 0.55, 0.38333333333333336).unwrap();
        let x = Signal::new(-2, vec![c(0.4, 1.0), c(-0.3, 0.2), c(0.0, -2.0)]).unwrap();
        let twice = trivial_reflect(&trivial_reflect(&x, &p).unwrap(), &p).unwrap();
        assert_eq!(twice.start(), x.start());
        for (n, z) in x.iter_indexed() {
            assert!((twice.value_at(n) - z).norm() < 1e-14);
        }
    }

    #[test]
    fn canonicalize_removes_rotation() {
        let p = LctParams::frft(1.0).unwrap();
        let x = Signal::new(1, vec![c(0.8, -0.1), c(0.0, 0.9)]).unwrap();
        let base = canonicalize(&x, &p).unwrap();
        for k in 0..50 {
            let alpha = 0.13 * k as f64;
            let rotated = trivial_rotate(&x, alpha);
            let canon = canonicalize(&rotated, &p).unwrap();
            assert_eq!(
                canonical_cmp(&canon, &base),
                Ordering::Equal,
                "alpha = {alpha}"
            );
        }
    }

    #[test]
    fn canonicalize_removes_shift_and_reflection() {
        let p = LctParams::new(1.2, 0.7, 1.0, 1.4166666666666667).unwrap();
        let x = Signal::new(-1, vec![c(1.0, 0.3), c(-0.2, 0.4), c(0.5, -1.1)]).unwrap();
        let base = canonicalize(&x, &p).unwrap();
        for n0 in [-4i64, -1, 2, 7] {
            let shifted = trivial_shift(&x, n0, &p).unwrap();
            assert_eq!(
                canonical_cmp(&canonicalize(&shifted, &p).unwrap(), &base),
                Ordering::Equal
            );
        }
        let reflected = trivial_reflect(&x, &p).unwrap();
        assert_eq!(
            canonical_cmp(&canonicalize(&reflected, &p).unwrap(), &base),
            Ordering::Equal
        );
        // idempotent
        assert_eq!(
            canonical_cmp(&canonicalize(&base, &p).unwrap(), &base),
            Ordering::Equal
        );
    }

    #[test]
    fn scale_examples() {
        let a = Autocorrelation::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]).unwrap();
        let scale = solution_scale(&a, &[c(1.0, 0.0)]).unwrap();
        assert!((scale - 1.0).abs() < 1e-15);

        let u = Signal::new(0, vec![c(1.0, 0.0), c(-4.0, 0.0)]).unwrap();
        let a = autocorrelation(&u);
        let scale = solution_scale(&a, &[c(4.0, 0.0)]).unwrap();
        assert!((scale - 1.0).abs() < 1e-14);

        assert!(matches!(
            solution_scale(&a, &[c(0.0, 0.0)]),
            Err(LctError::ZeroRoot { index: 0 })
        ));
    }

    #[test]
    fn build_reconstructs_the_original_selection() {
        let p = LctParams::frft(0.7).unwrap();
        let x = Signal::new(2, vec![c(1.0, -0.5), c(0.2, 0.3), c(-0.9, 1.1)]).unwrap();
        let u = chirp_modulate(&x, &p).unwrap();
        let a = autocorrelation(&u);

        // roots of the chirped signal's own transfer polynomial (degree 2)
        let q: Vec<Complex64> = u.values().to_vec();
        let betas = quadratic_roots(q[0], q[1], q[2]);
        let scale = solution_scale(&a, &betas).unwrap();
        // alpha matches the leading phase of u, n0 places the support at start(x)
        let leading = u.values()[u.support_len() - 1];
        let alpha = (leading / Complex64::new(scale, 0.0)).arg();
        let y = build_solution(&betas, scale, alpha, -x.start(), &p).unwrap();

        assert_eq!(y.start(), x.start());
        assert_eq!(y.support_len(), x.support_len());
        for (n, z) in x.iter_indexed() {
            assert!(
                (y.value_at(n) - z).norm() < 1e-10,
                "mismatch at {n}: {} vs {z}",
                y.value_at(n)
            );
        }
    }

    /// Exact roots of q0 + q1 w + q2 w^2, used as the oracle selection.
    fn quadratic_roots(q0: Complex64, q1: Complex64, q2: Complex64) -> Vec<Complex64> {
        let disc = (q1 * q1 - 4.0 * q0 * q2).sqrt();
        vec![(-q1 + disc) / (2.0 * q2), (-q1 - disc) / (2.0 * q2)]
    }

    #[test]
    fn empty_beta_list_gives_scaled_delta() {
        let p = LctParams::frft(0.9).unwrap();
        let y = build_solution(&[], 2.5, 0.4, 3, &p).unwrap();
        assert_eq!(y.start(), -3);
        assert_eq!(y.support_len(), 1);
        let theta = p.theta().unwrap();
        let expected = Complex64::from_polar(2.5, 0.4)
            * Complex64::from_polar(1.0, -p.chirp_phase(-3.0))
            / theta;
        assert!((y.value_at(-3) - expected).norm() < 1e-14);
    }

    #[test]
    fn flipping_the_spread_pair_keeps_the_intensity() {
        let p = LctParams::fourier().unwrap();
        let x = Signal::new(0, vec![c(1.0, 0.0), c(-4.0, 0.0)]).unwrap();
        let u = chirp_modulate(&x, &p).unwrap();
        let a = autocorrelation(&u);
        for beta in [c(4.0, 0.0), c(0.25, 0.0)] {
            let scale = solution_scale(&a, &[beta]).unwrap();
            let y = build_solution(&[beta], scale, 0.0, 0, &p).unwrap();
            assert!(
                max_intensity_gap(&x, &y, &p, 64) < 1e-12,
                "selection {beta} broke the intensity"
            );
        }
    }

    #[test]
    fn two_tap_signals_have_one_class() {
        let p = LctParams::frft(0.45).unwrap();
        for values in [
            vec![c(1.0, 0.0), c(-4.0, 0.0)],
            vec![c(0.3, 0.8), c(-1.2, 0.4)],
            vec![c(2.0, 0.0), c(0.0, 2.0)],
        ] {
            let x = Signal::new(-1, values).unwrap();
            let sols = enumerate_solutions(&x, &p, 1e-8).unwrap();
            assert_eq!(sols.len(), 1, "N = 2 must collapse to a single class");
        }
    }

    #[test]
    fn one_tap_signal_enumerates_to_its_own_class() {
        let p = LctParams::frft(1.3).unwrap();
        let x = Signal::delta(4, c(0.0, -2.0)).unwrap();
        let sols = enumerate_solutions(&x, &p, 1e-8).unwrap();
        assert_eq!(sols.len(), 1);
        let canon = &sols[0].canonical;
        assert_eq!(canon.start(), 0);
        assert_eq!(canon.support_len(), 1);
        let v = canon.value_at(0);
        assert!(v.im.abs() < 1e-12 && (v.re - 2.0).abs() < 1e-10);
        // the original's class is the enumerated one
        let own = canonicalize(&x, &p).unwrap();
        assert_eq!(canonical_cmp(&own, canon), Ordering::Equal);
    }

    #[test]
    fn spread_two_instance_collapses_to_x_class() {
        let p = LctParams::fourier().unwrap();
        let x = Signal::new(0, vec![c(1.0, 0.0), c(-4.0, 0.0)]).unwrap();
        let sols = enumerate_solutions(&x, &p, 1e-8).unwrap();
        assert_eq!(sols.len(), 1);
        let own = canonicalize(&x, &p).unwrap();
        assert_eq!(canonical_cmp(&own, &sols[0].canonical), Ordering::Equal);
    }
}
