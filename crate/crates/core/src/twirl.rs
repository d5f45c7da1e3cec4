//! The LOCC twirling protocol and Haar-sampled bilateral twirling.
//!
//! Every unitary here lives on subsystem B and preserves the split
//! span{|0⟩,|1⟩} ⊕ span{|2⟩,…,|n−1⟩}; its upper 2×2 block doubles as the
//! subsystem-A unitary, so "U⊗U" always means (2×2 block) ⊗ U on the
//! 2n-dimensional system.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, HERMITICITY_TOL};
use crate::states::{build_two_param_state, extract_parameters};

/// Diagonal phase gradient U_θ: |j⟩ ↦ e^{iθj}|j⟩.
pub fn u_theta(n: usize, theta: f64) -> ComplexMatrix {
    ComplexMatrix::from_diag(
        &(0..n)
            .map(|j| Complex64::from_polar(1.0, theta * j as f64))
            .collect::<Vec<_>>(),
    )
}

/// Single-level sign flip U_k: |j⟩ ↦ (−1)^{δ_{jk}}|j⟩, for 2 ≤ k ≤ n−1.
pub fn u_flip_k(n: usize, k: usize) -> Result<ComplexMatrix> {
    if !(2..n).contains(&k) {
        return Err(Error::ParameterOutOfRange(format!(
            "flip level {k} outside [2, {}]",
            n - 1
        )));
    }
    let mut u = ComplexMatrix::identity(n);
    u[(k, k)] = -Complex64::ONE;
    Ok(u)
}

/// Swap |0⟩ ↔ |1⟩, identity on j ≥ 2.
pub fn u_swap01(n: usize) -> ComplexMatrix {
    assert!(n >= 2);
    let mut u = ComplexMatrix::identity(n);
    u[(0, 0)] = Complex64::ZERO;
    u[(1, 1)] = Complex64::ZERO;
    u[(0, 1)] = Complex64::ONE;
    u[(1, 0)] = Complex64::ONE;
    u
}

/// Tail cycle T: fixes |0⟩, |1⟩ and maps |2⟩→|3⟩→…→|n−1⟩→|2⟩.
pub fn u_cycle_t(n: usize) -> ComplexMatrix {
    assert!(n >= 3);
    let mut u = ComplexMatrix::zeros(n);
    u[(0, 0)] = Complex64::ONE;
    u[(1, 1)] = Complex64::ONE;
    for j in 2..n {
        let target = if j == n - 1 { 2 } else { j + 1 };
        u[(target, j)] = Complex64::ONE;
    }
    u
}

/// Hadamard on span{|0⟩,|1⟩}, identity on j ≥ 2.
pub fn u_hadamard(n: usize) -> ComplexMatrix {
    assert!(n >= 2);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut u = ComplexMatrix::identity(n);
    u[(0, 0)] = Complex64::new(h, 0.0);
    u[(0, 1)] = Complex64::new(h, 0.0);
    u[(1, 0)] = Complex64::new(h, 0.0);
    u[(1, 1)] = Complex64::new(-h, 0.0);
    u
}

/// Upper-left 2×2 block of an n×n matrix, reused as the A-side unitary.
fn a_block(u: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(2, |i, j| u[(i, j)])
}

/// Max magnitude of entries coupling span{|0⟩,|1⟩} to span{|2⟩,…}.
fn block_leakage(u: &ComplexMatrix) -> f64 {
    let n = u.dim();
    let mut leak: f64 = 0.0;
    for i in 0..2 {
        for j in 2..n {
            leak = leak.max(u[(i, j)].norm()).max(u[(j, i)].norm());
        }
    }
    leak
}

/// Lift a block-preserving B-side unitary to the bilateral operator
/// (2×2 block) ⊗ U on the full 2n-dimensional system.
pub fn bilateral_operator(u: &ComplexMatrix) -> ComplexMatrix {
    a_block(u).kron(u)
}

/// (U⊗U)ρ(U†⊗U†) for U in G(2,n).
pub fn apply_bilateral(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<DensityMatrix> {
    let dims = rho.dims();
    if dims.dim_a != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: dims.dim_a,
        });
    }
    if u.dim() != dims.dim_b {
        return Err(Error::DimensionMismatch {
            expected: dims.dim_b,
            got: u.dim(),
        });
    }
    u.require_unitary()?;
    let leak = block_leakage(u);
    if leak > HERMITICITY_TOL {
        return Err(Error::NotBlockPreserving { leakage: leak });
    }
    Ok(rho.conjugated(&bilateral_operator(u)))
}

/// One protocol stage: a probabilistic mixture of bilateral unitaries,
/// stored as full 2n×2n operators.
#[derive(Debug, Clone)]
pub struct MixtureStep {
    pub label: String,
    pub branches: Vec<(f64, ComplexMatrix)>,
}

impl MixtureStep {
    fn bilateral(label: &str, branches: Vec<(f64, ComplexMatrix)>) -> Self {
        Self {
            label: label.to_string(),
            branches: branches
                .into_iter()
                .map(|(p, u)| (p, bilateral_operator(&u)))
                .collect(),
        }
    }

    /// Σ p_i · V_i ρ V_i†.
    pub fn apply(&self, rho: &DensityMatrix) -> DensityMatrix {
        let mut out = ComplexMatrix::zeros(rho.dim());
        for (p, v) in &self.branches {
            out = &out + &rho.matrix().conjugate_by(v).scale_re(*p);
        }
        DensityMatrix::new_unchecked(out, rho.dims())
    }

    pub fn probability_sum(&self) -> f64 {
        self.branches.iter().map(|(p, _)| p).sum()
    }
}

/// The protocol stages in order:
///   S1 {½ U_π, ½ 1}; S2 {½ U_k, ½ 1} for k = 2..n−1; S3 {½ U_{π/2}, ½ 1};
///   S4 {½ U_01, ½ 1}; S5 uniform over T^j, j = 0..n−3; S6 {⅔ H, ⅓ 1};
///   then S1–S5 once more.
pub fn protocol_steps(n: usize) -> Vec<MixtureStep> {
    assert!(n >= 3);
    let eye = ComplexMatrix::identity(n);
    let half_mix = |label: &str, u: ComplexMatrix| {
        MixtureStep::bilateral(label, vec![(0.5, u), (0.5, eye.clone())])
    };

    let mut first_pass = Vec::new();
    first_pass.push(half_mix("phase_pi", u_theta(n, std::f64::consts::PI)));
    for k in 2..n {
        first_pass.push(half_mix(&format!("flip_{k}"), u_flip_k(n, k).expect("k in range")));
    }
    first_pass.push(half_mix(
        "phase_half_pi",
        u_theta(n, std::f64::consts::FRAC_PI_2),
    ));
    first_pass.push(half_mix("swap01", u_swap01(n)));

    let cycle = u_cycle_t(n);
    let weight = 1.0 / (n as f64 - 2.0);
    let mut power = eye.clone();
    let mut tail_branches = Vec::new();
    for _ in 0..(n - 2) {
        tail_branches.push((weight, power.clone()));
        power = &cycle * &power;
    }
    first_pass.push(MixtureStep::bilateral("tail_average", tail_branches));

    let mut steps = first_pass.clone();
    steps.push(MixtureStep::bilateral(
        "hadamard_mix",
        vec![(2.0 / 3.0, u_hadamard(n)), (1.0 / 3.0, eye)],
    ));
    steps.extend(first_pass);
    steps
}

/// Run the full protocol as exact channel compositions. The output is the
/// family member with (α, γ) read off the input; no randomness involved.
pub fn twirl_pipeline(rho: &DensityMatrix) -> Result<DensityMatrix> {
    let dims = rho.dims();
    if dims.dim_a != 2 || dims.dim_b < 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "twirl needs dims (2, n >= 3), got ({}, {})",
            dims.dim_a, dims.dim_b
        )));
    }
    let mut state = rho.clone();
    for step in protocol_steps(dims.dim_b) {
        state = step.apply(&state);
    }
    Ok(state)
}

/// Max-abs entrywise distance from ρ to the family member with its own
/// extracted parameters; ~0 identifies family members.
pub fn class_residual(rho: &DensityMatrix) -> Result<f64> {
    let (alpha, gamma) = extract_parameters(rho)?;
    let projected = build_two_param_state(rho.dims().dim_b, alpha, gamma)?;
    Ok(rho.matrix().max_abs_diff(projected.matrix()))
}

/// Element of G(2,n): block-diagonal in the {|0⟩,|1⟩} ⊕ {|2⟩,…} split.
#[derive(Debug, Clone)]
pub struct LocalUnitary {
    pub n: usize,
    pub block_a: ComplexMatrix,
    pub block_b: ComplexMatrix,
}

impl LocalUnitary {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 3);
        Self {
            n,
            block_a: ComplexMatrix::identity(2),
            block_b: ComplexMatrix::identity(n - 2),
        }
    }

    /// Assemble the n×n block-diagonal B-side unitary.
    pub fn assembled(&self) -> ComplexMatrix {
        let mut u = ComplexMatrix::zeros(self.n);
        for i in 0..2 {
            for j in 0..2 {
                u[(i, j)] = self.block_a[(i, j)];
            }
        }
        for i in 0..(self.n - 2) {
            for j in 0..(self.n - 2) {
                u[(i + 2, j + 2)] = self.block_b[(i, j)];
            }
        }
        u
    }

    /// The bilateral 2n×2n operator (block_a ⊗ assembled).
    pub fn bilateral(&self) -> ComplexMatrix {
        self.block_a.kron(&self.assembled())
    }

    pub fn unitarity_deviation(&self) -> f64 {
        self.block_a
            .unitarity_deviation()
            .max(self.block_b.unitarity_deviation())
    }
}

/// Haar-uniform unitary: orthonormalize a complex Gaussian matrix, fixing
/// each pivot's phase so the triangular factor has a real positive diagonal.
pub fn haar_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    assert!(dim >= 1);
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
                })
                .collect()
        })
        .collect();
    for j in 0..dim {
        // Two Gram-Schmidt passes keep orthogonality at working precision.
        for _ in 0..2 {
            for i in 0..j {
                let proj: Complex64 = cols[i]
                    .iter()
                    .zip(cols[j].iter())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let (head, tail) = cols.split_at_mut(j);
                for (a, b) in head[i].iter().zip(tail[0].iter_mut()) {
                    *b -= proj * a;
                }
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    ComplexMatrix::from_fn(dim, |i, j| cols[j][i])
}

fn sample_g2n_with(n: usize, rng: &mut impl Rng) -> LocalUnitary {
    assert!(n >= 3);
    LocalUnitary {
        n,
        block_a: haar_unitary(2, rng),
        block_b: haar_unitary(n - 2, rng),
    }
}

/// Draw a Haar-distributed element of G(2,n); bit-identical for a fixed seed.
pub fn sample_g2n(n: usize, rng_seed: u64) -> LocalUnitary {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    sample_g2n_with(n, &mut rng)
}

fn require_2xn(rho: &DensityMatrix) -> Result<usize> {
    let dims = rho.dims();
    if dims.dim_a != 2 || dims.dim_b < 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "Haar twirling needs dims (2, n >= 3), got ({}, {})",
            dims.dim_a, dims.dim_b
        )));
    }
    Ok(dims.dim_b)
}

/// Monte-Carlo estimate of the twirling superoperator:
/// (1/S) Σ_s (U_s⊗U_s) ρ (U_s†⊗U_s†) over Haar samples from G(2,n).
pub fn monte_carlo_twirl(rho: &DensityMatrix, samples: usize, rng_seed: u64) -> Result<DensityMatrix> {
    let n = require_2xn(rho)?;
    assert!(samples >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut acc = ComplexMatrix::zeros(rho.dim());
    for _ in 0..samples {
        let u = sample_g2n_with(n, &mut rng);
        acc = &acc + &rho.matrix().conjugate_by(&u.bilateral());
    }
    Ok(DensityMatrix::new_unchecked(
        acc.scale_re(1.0 / samples as f64),
        rho.dims(),
    ))
}

/// Max entrywise deviation of (U⊗U)ρ(U†⊗U†) from ρ over Haar samples.
/// A value ≤ 1e-10 certifies invariance at sample resolution.
pub fn check_uu_invariance(rho: &DensityMatrix, samples: usize, rng_seed: u64) -> Result<f64> {
    let n = require_2xn(rho)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut max_dev: f64 = 0.0;
    for _ in 0..samples {
        let u = sample_g2n_with(n, &mut rng);
        let rotated = rho.conjugated(&u.bilateral());
        max_dev = max_dev.max(rotated.matrix().max_abs_diff(rho.matrix()));
    }
    Ok(max_dev)
}
