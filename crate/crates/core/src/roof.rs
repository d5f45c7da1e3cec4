//! Numerical convex-roof estimation of the entanglement of formation.
//!
//! Every size-K ensemble decomposition of ρ arises from its eigen-ensemble
//! through the rows of a K×K unitary, so the search space is exactly that
//! unitary manifold. The optimizer keeps the unnormalized ensemble vectors
//! and minimizes Σ_k p_k E(φ_k) by Haar restarts followed by sweeps of
//! two-row rotations; the result is an upper bound converging to E_f.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::density::DensityMatrix;
use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::linalg::entropy_of_spectrum;
use crate::matrix::ComplexMatrix;
use crate::twirl::haar_unitary;

/// Rank threshold: eigenvalues at or below this count as zero.
const RANK_EPS: f64 = 1e-10;
/// Ensemble members lighter than this contribute nothing.
const WEIGHT_EPS: f64 = 1e-14;

/// Search configuration; `k` must be at least the rank of the state.
#[derive(Debug, Clone, Copy)]
pub struct ConvexRoofConfig {
    pub k: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    pub step_tolerance: f64,
    pub rng_seed: u64,
}

impl ConvexRoofConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            restarts: 20,
            max_iterations: 80,
            step_tolerance: 1e-6,
            rng_seed: 7,
        }
    }
}

/// Best value found plus the number of refinement passes spent.
#[derive(Debug, Clone, Copy)]
pub struct RoofSearch {
    pub estimate: f64,
    pub iterations: usize,
}

/// Minimize the average pure-state entanglement over size-K decompositions.
pub fn convex_roof_search(rho: &DensityMatrix, cfg: &ConvexRoofConfig) -> Result<RoofSearch> {
    let dims = rho.dims();
    let eig = hermitian_eig(rho.matrix())?;
    let dim = rho.dim();
    let rank = eig.eigenvalues.iter().filter(|&&l| l > RANK_EPS).count();
    if rank == 0 {
        return Err(Error::NotDensity("state has numerical rank 0".into()));
    }
    if cfg.k < rank {
        return Err(Error::RankDeficient { k: cfg.k, rank });
    }

    // Scaled eigenvectors √λ_i·v_i of the nonzero spectrum (ascending order,
    // so the last `rank` entries).
    let scaled: Vec<Vec<Complex64>> = (dim - rank..dim)
        .map(|col| {
            let root = eig.eigenvalues[col].sqrt();
            (0..dim)
                .map(|row| eig.eigenvectors[(row, col)] * root)
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut best = f64::INFINITY;
    let mut total_passes = 0;
    for _ in 0..cfg.restarts.max(1) {
        let u = haar_unitary(cfg.k, &mut rng);
        let mut ensemble: Vec<Vec<Complex64>> = (0..cfg.k)
            .map(|k| {
                let mut phi = vec![Complex64::ZERO; dim];
                for (i, w) in scaled.iter().enumerate() {
                    let coeff = u[(k, i)].conj();
                    for (slot, z) in phi.iter_mut().zip(w) {
                        *slot += coeff * z;
                    }
                }
                phi
            })
            .collect();

        let mut terms: Vec<f64> = ensemble
            .iter()
            .map(|phi| weighted_entanglement(phi, dims.dim_a, dims.dim_b))
            .collect();

        for _ in 0..cfg.max_iterations {
            total_passes += 1;
            let improvement = sweep_pairs(&mut ensemble, &mut terms, dims.dim_a, dims.dim_b);
            if improvement < cfg.step_tolerance {
                break;
            }
        }
        best = best.min(terms.iter().sum());
    }

    Ok(RoofSearch {
        estimate: best,
        iterations: total_passes,
    })
}

/// The roof estimate alone.
pub fn convex_roof_estimate(rho: &DensityMatrix, cfg: &ConvexRoofConfig) -> Result<f64> {
    Ok(convex_roof_search(rho, cfg)?.estimate)
}

/// p·E(φ/√p) for an unnormalized member φ with weight p = ⟨φ|φ⟩.
fn weighted_entanglement(phi: &[Complex64], dim_a: usize, dim_b: usize) -> f64 {
    let weight: f64 = phi.iter().map(|z| z.norm_sqr()).sum();
    if weight <= WEIGHT_EPS {
        return 0.0;
    }
    if dim_a == 2 {
        // 2×2 reduced state: entropy from trace and determinant directly.
        let mut m00 = 0.0;
        let mut m11 = 0.0;
        let mut m01 = Complex64::ZERO;
        for j in 0..dim_b {
            let a = phi[j];
            let b = phi[dim_b + j];
            m00 += a.norm_sqr();
            m11 += b.norm_sqr();
            m01 += a * b.conj();
        }
        let det = m00 * m11 - m01.norm_sqr();
        let disc = (1.0 - 4.0 * det / (weight * weight)).clamp(0.0, 1.0);
        let upper = (1.0 + disc.sqrt()) / 2.0;
        weight * entropy_of_spectrum(&[upper, 1.0 - upper])
    } else {
        let mut reduced = ComplexMatrix::zeros(dim_a);
        for a in 0..dim_a {
            for b in 0..dim_a {
                let mut sum = Complex64::ZERO;
                for j in 0..dim_b {
                    sum += phi[a * dim_b + j] * phi[b * dim_b + j].conj();
                }
                reduced[(a, b)] = sum / weight;
            }
        }
        let spectrum = hermitian_eig(&reduced)
            .expect("reduced state of a vector is Hermitian")
            .eigenvalues;
        weight * entropy_of_spectrum(&spectrum)
    }
}

/// One cyclic sweep of two-row rotations; returns the total decrease.
fn sweep_pairs(
    ensemble: &mut [Vec<Complex64>],
    terms: &mut [f64],
    dim_a: usize,
    dim_b: usize,
) -> f64 {
    let k = ensemble.len();
    let mut gained = 0.0;
    for p in 0..k {
        for q in (p + 1)..k {
            let current = terms[p] + terms[q];
            if let Some((theta, phase, value)) =
                best_pair_rotation(&ensemble[p], &ensemble[q], current, dim_a, dim_b)
            {
                let (new_p, new_q) = rotate_pair(&ensemble[p], &ensemble[q], theta, phase);
                ensemble[p] = new_p;
                ensemble[q] = new_q;
                terms[p] = weighted_entanglement(&ensemble[p], dim_a, dim_b);
                terms[q] = weighted_entanglement(&ensemble[q], dim_a, dim_b);
                gained += current - value;
            }
        }
    }
    gained
}

/// Mix two unnormalized members by a phased rotation; unitary on the pair,
/// so the ensemble still resolves the same ρ.
fn rotate_pair(
    a: &[Complex64],
    b: &[Complex64],
    theta: f64,
    phase: f64,
) -> (Vec<Complex64>, Vec<Complex64>) {
    let (c, s) = (theta.cos(), theta.sin());
    let e_pos = Complex64::from_polar(s, phase);
    let e_neg = Complex64::from_polar(s, -phase);
    let new_a = a
        .iter()
        .zip(b)
        .map(|(x, y)| x * c + y * e_pos)
        .collect::<Vec<_>>();
    let new_b = a
        .iter()
        .zip(b)
        .map(|(x, y)| y * c - x * e_neg)
        .collect::<Vec<_>>();
    (new_a, new_b)
}

/// Grid scan plus golden-section polish over (θ, φ) for one pair. Returns
/// the winning rotation only when it strictly improves on `current`.
///
/// The θ ladder reaches down to 3e-3 so that shallow descent directions
/// near a stationary point are still seen; a negative θ is equivalent to
/// φ + π, so positive angles with a full phase circle cover the group.
fn best_pair_rotation(
    a: &[Complex64],
    b: &[Complex64],
    current: f64,
    dim_a: usize,
    dim_b: usize,
) -> Option<(f64, f64, f64)> {
    let eval = |theta: f64, phase: f64| -> f64 {
        let (na, nb) = rotate_pair(a, b, theta, phase);
        weighted_entanglement(&na, dim_a, dim_b) + weighted_entanglement(&nb, dim_a, dim_b)
    };

    const THETAS: [f64; 13] = [
        0.003, 0.01, 0.03, 0.08, 0.15, 0.25, 0.39, 0.59, 0.785, 0.98, 1.18, 1.37, 1.52,
    ];
    let mut best = (0.0, 0.0, current);
    for theta in THETAS {
        for pi in 0..8 {
            let phase = pi as f64 * std::f64::consts::FRAC_PI_4;
            let value = eval(theta, phase);
            if value < best.2 {
                best = (theta, phase, value);
            }
        }
    }
    if best.2 >= current {
        return None;
    }

    let (mut theta, mut phase, _) = best;
    for _ in 0..2 {
        let (t, _) = golden_min(
            |x| eval(x, phase),
            (theta / 3.0).min(theta - 0.05),
            (theta * 3.0).max(theta + 0.05).min(std::f64::consts::FRAC_PI_2),
        );
        theta = t;
        let (f, _) = golden_min(
            |x| eval(theta, x),
            phase - std::f64::consts::FRAC_PI_4,
            phase + std::f64::consts::FRAC_PI_4,
        );
        phase = f;
    }
    let value = eval(theta, phase);
    if value < best.2 {
        Some((theta, phase, value))
    } else {
        Some(best)
    }
}

/// Golden-section minimum of a unimodal-ish scalar function on [lo, hi].
fn golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..28 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
