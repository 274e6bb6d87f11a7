//! Polynomial roots and conjugate-reciprocal pairing.
//!
//! [`find_roots`] runs a simultaneous Aberth-Ehrlich iteration, which keeps
//! clustered and multiple roots together instead of smearing them through
//! sequential deflation.  [`pair_roots`] then organizes the root multiset of
//! an autocorrelation polynomial into free pairs (g, 1/conj(g)) and
//! self-paired unimodular clusters of even multiplicity.

use num_complex::Complex64;

use crate::autocorr::AutocorrPolynomial;
use crate::error::{LctError, Result};

/// Iteration budget of the Aberth-Ehrlich solver.
pub const MAX_ITERATIONS: usize = 200;

/// Default residual tolerance, relative to the largest coefficient modulus.
pub const ROOT_RESIDUAL_TOL: f64 = 1e-12;

/// Default tolerance for matching a root to its conjugate reciprocal.
/// Double roots on the unit circle split numerically by roughly the square
/// root of the residual floor, so this must stay well above 1e-8.
pub const PAIRING_TOL: f64 = 1e-7;

/// Roots of an autocorrelation polynomial organized per the reflection
/// symmetry about the unit circle.
#[derive(Debug, Clone)]
pub struct RootSet {
    free_pairs: Vec<(Complex64, Complex64)>,
    unimodular: Vec<(Complex64, usize)>,
    n: usize,
}

impl RootSet {
    /// Pairs with the |g| > 1 member first.
    pub fn free_pairs(&self) -> &[(Complex64, Complex64)] {
        &self.free_pairs
    }

    /// Unimodular cluster representatives with their (even) multiplicities.
    pub fn unimodular_roots(&self) -> &[(Complex64, usize)] {
        &self.unimodular
    }

    /// Support length N of the originating signal (degree/2 + 1).
    pub fn support_len(&self) -> usize {
        self.n
    }

    /// Factors every solution must contain: multiplicity/2 copies per
    /// unimodular cluster, since g and 1/conj(g) coincide there.
    pub fn forced_betas(&self) -> Vec<Complex64> {
        let mut betas = Vec::new();
        for &(root, multiplicity) in &self.unimodular {
            for _ in 0..multiplicity / 2 {
                betas.push(root);
            }
        }
        betas
    }

    /// Number of selectable beta vectors, 2^(number of free pairs).
    pub fn selection_count(&self) -> u64 {
        1u64 << self.free_pairs.len()
    }

    /// Beta vector for a selection bitmask: bit j set picks the mirror
    /// (inside) member of pair j, otherwise the |g| > 1 member; forced
    /// unimodular factors are always appended.
    pub fn betas_for_selection(&self, mask: u64) -> Vec<Complex64> {
        let mut betas: Vec<Complex64> = self
            .free_pairs
            .iter()
            .enumerate()
            .map(
                |(j, &(outside, inside))| {
                    if mask >> j & 1 == 1 {
                        inside
                    } else {
                        outside
                    }
                },
            )
            .collect();
        betas.extend(self.forced_betas());
        betas
    }
}

/// Newton-polishes every unimodular cluster representative against the
/// (multiplicity-1)-th derivative of the polynomial, where an m-fold root is
/// simple again.  The Aberth cluster centroid locates an m-fold root only to
/// O(eps^(1/m)); this recovers it to near machine precision.
pub fn polish_multiple_roots(poly: &AutocorrPolynomial, set: &mut RootSet) {
    for (representative, multiplicity) in &mut set.unimodular {
        if *multiplicity < 2 {
            continue;
        }
        let mut coeffs: Vec<Complex64> = poly.coeffs().to_vec();
        for _ in 0..*multiplicity - 1 {
            coeffs = coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect();
        }
        if coeffs.len() < 2 {
            continue;
        }
        let derivative: Vec<Complex64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        let eval = |cs: &[Complex64], z: Complex64| -> Complex64 {
            cs.iter().rev().fold(Complex64::ZERO, |acc, &c| acc * z + c)
        };
        let mut z = *representative;
        for _ in 0..60 {
            let dp = eval(&derivative, z);
            if dp.norm() < f64::MIN_POSITIVE {
                break;
            }
            let step = eval(&coeffs, z) / dp;
            z -= step;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        // keep the polish only if it stayed inside the cluster's territory
        if (z - *representative).norm() <= 1.0 {
            *representative = z;
        }
    }
}

/// All 2N-2 roots (with multiplicity) of an autocorrelation polynomial,
/// sorted by modulus then argument.  Residuals satisfy
/// |P(root)| <= tol * max|coeff|; otherwise [`LctError::Convergence`].
pub fn find_roots(poly: &AutocorrPolynomial, tol: f64) -> Result<Vec<Complex64>> {
    let degree = poly.degree();
    if degree == 0 {
        return Ok(Vec::new());
    }
    let scale = poly.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let coeffs: Vec<Complex64> = poly.coeffs().iter().map(|&c| c / scale).collect();
    let derivative: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as f64)
        .collect();

    let eval = |cs: &[Complex64], z: Complex64| -> Complex64 {
        cs.iter().rev().fold(Complex64::ZERO, |acc, &c| acc * z + c)
    };

    // initial ring of radius (|c0|/|c_deg|)^(1/deg) with a deterministic
    // jitter that breaks the symmetric stalls of the plain ring
    let radius = (coeffs[0].norm() / coeffs[degree].norm()).powf(1.0 / degree as f64);
    let mut rng_state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut jitter = || {
        // splitmix64
        rng_state = rng_state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = rng_state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let spacing = std::f64::consts::TAU / degree as f64;
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = spacing * (k as f64 + 0.37) + 0.3 * spacing * jitter();
            let r = radius * (1.0 + 0.05 * jitter());
            Complex64::from_polar(r, angle)
        })
        .collect();

    // Iterate to stagnation rather than stopping at the residual target:
    // multiple roots keep improving linearly long after their residual is
    // tiny, and stopping early would leave unit-circle double roots split
    // wider than the pairing tolerance.
    let mut iterations = 0;
    for iter in 0..MAX_ITERATIONS {
        iterations = iter + 1;
        let mut next = roots.clone();
        let mut max_step = 0.0f64;
        for (k, item) in next.iter_mut().enumerate() {
            let z = roots[k];
            let p = eval(&coeffs, z);
            let dp = eval(&derivative, z);
            let newton = if dp.norm() > f64::MIN_POSITIVE {
                p / dp
            } else {
                // flat spot; nudge off it
                Complex64::new(1e-8, 1e-8)
            };
            let mut repulsion = Complex64::ZERO;
            for (j, &other) in roots.iter().enumerate() {
                if j == k {
                    continue;
                }
                let diff = z - other;
                if diff.norm() > 1e-300 {
                    repulsion += diff.finv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            max_step = max_step.max(step.norm() / (1.0 + z.norm()));
            *item = z - step;
        }
        roots = next;
        if max_step <= 1e-14 {
            break;
        }
    }

    // Residuals must reach the requested tolerance or the Horner evaluation
    // noise floor, whichever is larger at that root's modulus.
    let mut worst_excess = 0.0f64;
    let mut worst_residual = 0.0f64;
    for &z in &roots {
        let residual = eval(&coeffs, z).norm();
        let noise_floor: f64 = {
            let mut bound = 0.0;
            let mut power = 1.0;
            for c in &coeffs {
                bound += c.norm() * power;
                power *= z.norm();
            }
            8.0 * f64::EPSILON * bound
        };
        let allowed = tol.max(noise_floor);
        if residual > allowed && residual - allowed > worst_excess {
            worst_excess = residual - allowed;
            worst_residual = residual;
        }
    }
    if worst_excess > 0.0 {
        return Err(LctError::Convergence {
            iterations,
            tolerance: tol,
            residual: worst_residual,
        });
    }

    roots.sort_by(|x, y| {
        x.norm()
            .total_cmp(&y.norm())
            .then(x.arg().total_cmp(&y.arg()))
    });
    Ok(roots)
}

/// Organizes a conjugate-reciprocal-symmetric root multiset into a
/// [`RootSet`].
///
/// Roots with ||g| - 1| <= tol are grouped by proximity into clusters which
/// must have even multiplicity; every other root is greedily matched to the
/// remaining root closest to 1/conj(g), which must lie within
/// tol * max(1, |g|).
pub fn pair_roots(roots: &[Complex64], tol: f64) -> Result<RootSet> {
    if !roots.len().is_multiple_of(2) {
        return Err(LctError::Pairing {
            reason: format!("odd number of roots ({})", roots.len()),
        });
    }
    let n = roots.len() / 2 + 1;

    let mut unimodular: Vec<Complex64> = Vec::new();
    let mut free: Vec<Complex64> = Vec::new();
    for &root in roots {
        if (root.norm() - 1.0).abs() <= tol {
            unimodular.push(root);
        } else {
            free.push(root);
        }
    }

    // greedy mirror matching, outermost roots first for determinism
    free.sort_by(|x, y| {
        y.norm()
            .total_cmp(&x.norm())
            .then(x.arg().total_cmp(&y.arg()))
    });
    let mut free_pairs = Vec::new();
    while let Some(root) = free.first().copied() {
        free.remove(0);
        let mirror_target = root.conj().finv();
        let (best_idx, best_dist) = free
            .iter()
            .enumerate()
            .map(|(i, &cand)| (i, (cand - mirror_target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| LctError::Pairing {
                reason: format!("root {root} has no partner left"),
            })?;
        if best_dist > tol * root.norm().max(1.0) {
            return Err(LctError::Pairing {
                reason: format!(
                    "root {root} has no conjugate-reciprocal partner within {:.3e} (closest {:.3e})",
                    tol * root.norm().max(1.0),
                    best_dist
                ),
            });
        }
        let partner = free.remove(best_idx);
        if root.norm() >= 1.0 {
            free_pairs.push((root, partner));
        } else {
            free_pairs.push((partner, root));
        }
    }

    // chain-cluster the unimodular roots by angle; split roots of one double
    // zero sit up to 2*tol apart
    unimodular.sort_by(|x, y| x.arg().total_cmp(&y.arg()));
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for root in unimodular {
        match clusters.last_mut() {
            Some(cluster) if (root - *cluster.last().unwrap()).norm() <= 2.0 * tol => {
                cluster.push(root)
            }
            _ => clusters.push(vec![root]),
        }
    }
    // the circle wraps: merge the last cluster into the first if they touch
    if clusters.len() > 1 {
        let first = clusters.first().unwrap()[0];
        let last = *clusters.last().unwrap().last().unwrap();
        if (first - last).norm() <= 2.0 * tol {
            let tail = clusters.pop().unwrap();
            clusters[0].extend(tail);
        }
    }
    let mut unimodular_clusters = Vec::new();
    for cluster in clusters {
        if cluster.len() % 2 != 0 {
            return Err(LctError::Pairing {
                reason: format!(
                    "unimodular cluster near {} has odd multiplicity {}",
                    cluster[0],
                    cluster.len()
                ),
            });
        }
        let centroid = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
        unimodular_clusters.push((centroid, cluster.len()));
    }
    unimodular_clusters.sort_by(|x, y| x.0.arg().total_cmp(&y.0.arg()));

    Ok(RootSet {
        free_pairs,
        unimodular: unimodular_clusters,
        n,
    })
}
