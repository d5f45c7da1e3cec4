//! Entanglement measures for the family: negativity (spectral and closed
//! form), formation-entanglement bounds, exact values on the special lines,
//! Wootters concurrence on 2⊗2 blocks, and the aggregated report.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::linalg::{binary_entropy, partial_trace_b, partial_transpose, trace_norm, BipartiteDims};
use crate::matrix::ComplexMatrix;
use crate::roof::{convex_roof_estimate, ConvexRoofConfig};
use crate::states::TwoParamState;

/// Position of (α, γ) relative to the separability frontier (n−2)α+γ = ½.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionLabel {
    PptSeparable,
    NptEntangled,
    Boundary,
}

impl RegionLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::PptSeparable => "ppt_separable",
            RegionLabel::NptEntangled => "npt_entangled",
            RegionLabel::Boundary => "boundary",
        }
    }
}

/// ‖ρ^{T_B}‖₁ − 1: twice the absolute sum of negative transpose eigenvalues.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho.matrix(), rho.dims())?;
    Ok(trace_norm(&pt)? - 1.0)
}

/// Closed form for the family: max{(2n−4)α + 2γ − 1, 0}.
pub fn negativity_closed_form(n: usize, alpha: f64, gamma: f64) -> Result<f64> {
    let state = TwoParamState::new(n, alpha, gamma)?;
    let value = (2.0 * state.n as f64 - 4.0) * state.alpha + 2.0 * state.gamma - 1.0;
    Ok(value.max(0.0))
}

fn frontier_coordinate(state: &TwoParamState) -> f64 {
    (state.n as f64 - 2.0) * state.alpha + state.gamma
}

/// PPT/NPT classification with a 1e-12 band around the frontier.
pub fn classify_region(n: usize, alpha: f64, gamma: f64) -> Result<RegionLabel> {
    let state = TwoParamState::new(n, alpha, gamma)?;
    let s = frontier_coordinate(&state);
    Ok(if s < 0.5 - 1e-12 {
        RegionLabel::PptSeparable
    } else if s > 0.5 + 1e-12 {
        RegionLabel::NptEntangled
    } else {
        RegionLabel::Boundary
    })
}

/// 𝓔(c) = h((1 + √(1−c²))/2): converts a concurrence into an entanglement
/// of formation. Monotone, 𝓔(0) = 0, 𝓔(1) = 1.
pub fn curly_e(c: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&c) {
        return Err(Error::ParameterOutOfRange(format!(
            "concurrence {c} outside [0, 1]"
        )));
    }
    let c = c.clamp(0.0, 1.0);
    binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0)
}

/// Wootters concurrence of a two-qubit density matrix:
/// max{0, λ₁−λ₂−λ₃−λ₄} with λ_i the decreasing square roots of the
/// spectrum of ρ·(σy⊗σy)ρ*(σy⊗σy).
pub fn concurrence_2x2(rho4: &ComplexMatrix) -> Result<f64> {
    let dims = BipartiteDims::new(2, 2)?;
    let rho = DensityMatrix::new(rho4.clone(), dims)?;
    let lambdas = spin_flip_sqrt_spectrum(rho.matrix())?;
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Decreasing square roots of eig(ρ·ρ̃), computed through the Hermitian
/// matrix √ρ·ρ̃·√ρ which shares the spectrum.
fn spin_flip_sqrt_spectrum(rho: &ComplexMatrix) -> Result<[f64; 4]> {
    let flipped = spin_flip(rho);
    let eig = hermitian_eig(rho)?;
    // √ρ from the eigendecomposition; tiny negatives are rounding noise.
    let v = &eig.eigenvectors;
    let sqrt_rho = {
        let scaled = ComplexMatrix::from_fn(4, |i, j| {
            v[(i, j)] * eig.eigenvalues[j].max(0.0).sqrt()
        });
        &scaled * &v.adjoint()
    };
    let product = &(&sqrt_rho * &flipped) * &sqrt_rho;
    let spectrum = hermitian_eig(&product)?.eigenvalues;
    let mut lambdas = [0.0; 4];
    for (slot, value) in lambdas.iter_mut().zip(spectrum.iter().rev()) {
        *slot = value.max(0.0).sqrt();
    }
    Ok(lambdas)
}

/// (σy⊗σy)·ρ*·(σy⊗σy).
fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    let sy = {
        let mut m = ComplexMatrix::zeros(2);
        m[(0, 1)] = Complex64::new(0.0, -1.0);
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        m
    };
    let yy = sy.kron(&sy);
    &(&yy * &rho.conj()) * &yy
}

/// General-state lower bound on the entanglement of formation:
/// 𝓔(√(Σ_{i<j} C_ij²)) over all 2⊗2 blocks spanned by |0i⟩,|1i⟩,|0j⟩,|1j⟩.
///
/// Each block is renormalized by its weight before the concurrence call and
/// the concurrence scaled back by that weight; empty blocks contribute 0.
pub fn cllh_lower_bound(rho: &DensityMatrix) -> Result<f64> {
    let dims = rho.dims();
    if dims.dim_a != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: dims.dim_a,
        });
    }
    let n = dims.dim_b;
    let m = rho.matrix();
    let mut sum_sq = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            // Basis order |0i⟩, |0j⟩, |1i⟩, |1j⟩ = qubit A ⊗ span{|i⟩,|j⟩}.
            let flat = [i, j, n + i, n + j];
            let block = ComplexMatrix::from_fn(4, |r, c| m[(flat[r], flat[c])]);
            let weight = block.trace().re;
            if weight <= 1e-14 {
                continue;
            }
            let c_ij = weight * concurrence_2x2(&block.scale_re(1.0 / weight))?;
            sum_sq += c_ij * c_ij;
        }
    }
    curly_e(sum_sq.sqrt().min(1.0))
}

/// Closed-form lower bound on the family: h(½ + √(s(1−s))) with
/// s = (n−2)α + γ, and 0 on the PPT region.
pub fn eof_lower_bound(n: usize, alpha: f64, gamma: f64) -> Result<f64> {
    let negativity = negativity_closed_form(n, alpha, gamma)?;
    curly_e(negativity)
}

/// Tight convexity upper bound on the NPT region:
/// 𝓔(N) + t·(N − 𝓔(N)) with N = 2s − 1 and t = (n−2)α/(1−s).
pub fn eof_upper_bound(n: usize, alpha: f64, gamma: f64) -> Result<f64> {
    let state = TwoParamState::new(n, alpha, gamma)?;
    let s = frontier_coordinate(&state);
    if s <= 0.5 {
        return Err(Error::ParameterOutOfRange(format!(
            "upper bound is defined on the NPT region only (s = {s} <= 1/2)"
        )));
    }
    let negativity = 2.0 * s - 1.0;
    let e_of_n = curly_e(negativity.min(1.0))?;
    let weighted_alpha = (state.n as f64 - 2.0) * state.alpha;
    if weighted_alpha <= 1e-15 {
        // Werner line: the convex decomposition degenerates to its endpoint.
        return Ok(e_of_n);
    }
    if s >= 1.0 - 1e-15 {
        return Err(Error::ParameterOutOfRange(
            "s = 1 with alpha > 0 is incompatible with beta >= 0".into(),
        ));
    }
    let t = weighted_alpha / (1.0 - s);
    Ok(e_of_n + t * (negativity - e_of_n))
}

/// Exact formation entanglement on the β = 0 line: E_f(ϱ_γ) = γ.
pub fn eof_exact_varrho(gamma: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&gamma) {
        return Err(Error::ParameterOutOfRange(format!(
            "gamma {gamma} outside [0, 1]"
        )));
    }
    Ok(gamma.clamp(0.0, 1.0))
}

/// Exact formation entanglement on the Werner line:
/// 0 for γ ≤ ½, h(½ + √(γ(1−γ))) above.
pub fn eof_exact_werner(gamma: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&gamma) {
        return Err(Error::ParameterOutOfRange(format!(
            "gamma {gamma} outside [0, 1]"
        )));
    }
    let gamma = gamma.clamp(0.0, 1.0);
    if gamma <= 0.5 {
        return Ok(0.0);
    }
    binary_entropy(0.5 + (gamma * (1.0 - gamma)).sqrt())
}

/// Entropy of the A-side reduced state of a pure state.
pub fn pure_state_entanglement(psi: &[Complex64], dims: BipartiteDims) -> Result<f64> {
    if psi.len() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            got: psi.len(),
        });
    }
    let norm_sq: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm_sq.sqrt() - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized {
            norm: norm_sq.sqrt(),
        });
    }
    let projector = ComplexMatrix::outer(psi);
    let reduced = partial_trace_b(&projector, dims)?;
    let spectrum = hermitian_eig(&reduced)?.eigenvalues;
    Ok(crate::linalg::entropy_of_spectrum(&spectrum))
}

/// All measures for one family member, with optional oracle cross-checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub beta: f64,
    pub region: RegionLabel,
    pub negativity_spectral: f64,
    pub negativity_closed: f64,
    /// Halved (Vidal-Werner) convention, derived only; never used in bounds.
    pub negativity_halved: f64,
    pub eof_lower: f64,
    pub eof_upper: f64,
    pub eof_exact: Option<f64>,
    pub roof_estimate: Option<f64>,
}

/// Compute the report. With `with_oracles` the convex-roof estimator runs
/// on the special lines and the report invariants are asserted.
pub fn report(n: usize, alpha: f64, gamma: f64, with_oracles: bool) -> Result<EntanglementReport> {
    let state = TwoParamState::new(n, alpha, gamma)?;
    let rho = state.build();
    let region = classify_region(n, alpha, gamma)?;
    let negativity_spectral = negativity(&rho)?;
    let negativity_closed = negativity_closed_form(n, alpha, gamma)?;
    let (eof_lower, eof_upper) = match region {
        // Separable: formation entanglement is exactly zero.
        RegionLabel::PptSeparable | RegionLabel::Boundary => (0.0, 0.0),
        RegionLabel::NptEntangled => (
            eof_lower_bound(n, alpha, gamma)?,
            eof_upper_bound(n, alpha, gamma)?,
        ),
    };

    let on_werner_line = state.alpha <= 1e-12;
    let on_beta0_line = state.beta <= 1e-12;
    let eof_exact = if on_werner_line {
        Some(eof_exact_werner(state.gamma)?)
    } else if on_beta0_line {
        Some(eof_exact_varrho(state.gamma)?)
    } else {
        None
    };

    let roof_estimate = if with_oracles && eof_exact.is_some() {
        let rank = hermitian_eig(rho.matrix())?
            .eigenvalues
            .iter()
            .filter(|&&l| l > 1e-10)
            .count();
        Some(convex_roof_estimate(
            &rho,
            &ConvexRoofConfig::new(rank.max(1)),
        )?)
    } else {
        None
    };

    let report = EntanglementReport {
        n,
        alpha: state.alpha,
        gamma: state.gamma,
        beta: state.beta,
        region,
        negativity_spectral,
        negativity_closed,
        negativity_halved: negativity_closed / 2.0,
        eof_lower,
        eof_upper,
        eof_exact,
        roof_estimate,
    };

    if with_oracles {
        assert!(
            (report.negativity_spectral - report.negativity_closed).abs() <= 1e-10,
            "spectral/closed-form negativity disagree"
        );
        assert!(report.eof_lower <= report.eof_upper + 1e-10);
        assert!(report.eof_upper <= report.negativity_closed + 1e-10);
    }
    Ok(report)
}
