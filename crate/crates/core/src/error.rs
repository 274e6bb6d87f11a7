//! Error type shared by every module of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, LctError>;

#[derive(Debug, Clone, Error)]
pub enum LctError {
    /// The parameter matrix does not have determinant 1.
    #[error("parameter determinant a*d - b*c = {det} deviates from 1 beyond 1e-12")]
    Determinant { det: f64 },

    /// A parameter is NaN or infinite.
    #[error("non-finite transform parameter ({name} = {value})")]
    NonFiniteParameter { name: &'static str, value: f64 },

    /// b is (numerically) zero; the transform reduces to a chirped copy and
    /// is rejected by every transform operation.
    #[error("degenerate parameters: |b| = {b:e} is below the transform threshold 1e-12")]
    DegenerateParameter { b: f64 },

    #[error("signal must contain at least one sample")]
    EmptySignal,

    /// Support endpoints must be nonzero so the support length is exact.
    #[error("signal endpoint at index {index} has magnitude {magnitude:e}, below the 1e-14 support threshold")]
    ZeroEndpoint { index: i64, magnitude: f64 },

    #[error("invalid frequency grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("quadrature needs at least {min} nodes, got {nodes}")]
    Quadrature { nodes: usize, min: usize },

    /// An autocorrelation sequence must satisfy `a[-n] = conj(a[n])`.
    #[error("autocorrelation is not Hermitian symmetric at lag {lag}")]
    NotHermitian { lag: i64 },

    /// Leading autocorrelation-polynomial coefficient vanished; the upstream
    /// endpoint-nonzero invariant was violated.
    #[error(
        "autocorrelation polynomial leading coefficient magnitude {magnitude:e} is degenerate"
    )]
    DegenerateLeadingCoeff { magnitude: f64 },

    #[error(
        "root finding stalled at residual {residual:e} after {iterations} iterations (target {tolerance:e})"
    )]
    Convergence {
        iterations: usize,
        tolerance: f64,
        residual: f64,
    },

    /// The root multiset could not be organized into conjugate-reciprocal
    /// pairs and even unimodular clusters; the magnitudes were not a valid
    /// intensity or the noise exceeds the pairing tolerance.
    #[error("root pairing failed: {reason}")]
    Pairing { reason: String },

    #[error("root {index} is numerically zero and cannot enter a solution scale")]
    ZeroRoot { index: usize },

    #[error("intensity sample system is ill-conditioned (estimate {condition:e} > 1e12)")]
    SingularSystem { condition: f64 },

    #[error("need at least {need} intensity samples, got {got}")]
    InsufficientSamples { got: usize, need: usize },

    #[error("sampled function: {reason}")]
    InvalidSampledFunction { reason: String },
}
