//! Discrete-time linear canonical transforms and the complete ambiguity set
//! of phase retrieval from their magnitudes.
//!
//! The linear canonical transform generalizes the Fourier, Fresnel, and
//! fractional Fourier transforms through a unimodular parameter matrix
//! (a, b, c, d).  For a finitely supported signal, recovering the signal
//! from `|C[x]|` is ambiguous in a completely describable way: rotations,
//! chirp-modulated shifts, and the chirp-modulated conjugate reflection
//! always survive, and the remaining freedom consists of swapping
//! conjugate-reciprocal root pairs of the autocorrelation polynomial of the
//! chirped signal.  This crate computes the transform (forward, inverse,
//! and a quadrature-based continuous-time variant), enumerates every
//! solution class, and verifies intensity matches numerically.
//!
//! Quick tour:
//!
//! ```
//! use lctphase::{enumerate_solutions, forward, FrequencyGrid, LctParams, Signal};
//! use num_complex::Complex64;
//!
//! let params = LctParams::frft(0.7).unwrap();
//! let x = Signal::new(0, vec![
//!     Complex64::new(1.0, 0.0),
//!     Complex64::new(0.0, 2.0),
//!     Complex64::new(-0.5, 0.0),
//! ]).unwrap();
//!
//! let grid = FrequencyGrid::equispaced(&params, 4 * x.support_len()).unwrap();
//! let spectrum = forward(&x, &params, &grid).unwrap();
//! assert_eq!(spectrum.len(), grid.len());
//!
//! let classes = enumerate_solutions(&x, &params, 1e-8).unwrap();
//! assert!(!classes.is_empty());
//! ```

pub mod ambiguity;
pub mod autocorr;
pub mod continuous;
pub mod error;
pub mod intensity;
pub mod params;
pub mod roots;
pub mod signal;
pub mod transform;

pub use ambiguity::{
    build_solution, canonical_cmp, canonicalize, enumerate_solutions, enumerate_solutions_with,
    solution_scale, trivial_reflect, trivial_rotate, trivial_shift, AmbiguitySolution,
    EnumerationOptions,
};
pub use autocorr::{autocorr_polynomial, autocorrelation, AutocorrPolynomial, Autocorrelation};
pub use continuous::{
    autocorrelation_identity_check, continuous_lct, invariance_variant, verify_invariance,
    DeviationReport, InvarianceVariant, SampledFunction,
};
pub use error::{LctError, Result};
pub use intensity::{
    intensity_from_samples, intensity_value, verify_intensity_match, IntensityGrid, MatchReport,
};
pub use params::{LctParams, Preset};
pub use roots::{find_roots, pair_roots, polish_multiple_roots, RootSet};
pub use signal::Signal;
pub use transform::{chirp_modulate, forward, forward_at, inverse, FrequencyGrid};
