//! The two-parameter family of 2⊗n states, its special lines, and the
//! m⊗n generalization.
//!
//! A family member is
//!   ρ_(α,γ) = α Σ_{i∈{0,1}, j≥2} |ij⟩⟨ij|
//!           + β (|φ⁺⟩⟨φ⁺| + |φ⁻⟩⟨φ⁻| + |ψ⁺⟩⟨ψ⁺|)
//!           + γ |ψ⁻⟩⟨ψ⁻|
//! with β fixed by the unit-trace condition 2(n−2)α + 3β + γ = 1.

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::BipartiteDims;
use crate::matrix::ComplexMatrix;

/// Slack used on every admissibility inequality.
const PARAM_SLACK: f64 = 1e-12;

/// The four Bell vectors embedded in a 2⊗n space (flat index i·n + j).
#[derive(Debug, Clone)]
pub struct BellVectors {
    pub phi_plus: Vec<Complex64>,
    pub phi_minus: Vec<Complex64>,
    pub psi_plus: Vec<Complex64>,
    pub psi_minus: Vec<Complex64>,
}

/// Bell vectors supported on {|00⟩, |01⟩, |10⟩, |11⟩} of a 2⊗n space.
pub fn bell_vectors(n: usize) -> Result<BellVectors> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "Bell vectors need n >= 2, got {n}"
        )));
    }
    let inv = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let dim = 2 * n;
    let make = |pairs: [(usize, f64); 2]| {
        let mut v = vec![Complex64::ZERO; dim];
        for (idx, sign) in pairs {
            v[idx] = inv * sign;
        }
        v
    };
    Ok(BellVectors {
        phi_plus: make([(0, 1.0), (n + 1, 1.0)]),
        phi_minus: make([(0, 1.0), (n + 1, -1.0)]),
        psi_plus: make([(1, 1.0), (n, 1.0)]),
        psi_minus: make([(1, 1.0), (n, -1.0)]),
    })
}

/// Parameters (n, α, γ) of a family member, with β derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoParamState {
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub beta: f64,
}

impl TwoParamState {
    /// Validate the admissible region: α, γ ≥ 0, α ≤ 1/(2(n−2)), γ ≤ 1,
    /// and derived β ≥ 0 (all with 1e-12 slack).
    pub fn new(n: usize, alpha: f64, gamma: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::ParameterOutOfRange(format!(
                "the family needs n >= 3, got {n}"
            )));
        }
        let alpha_max = 1.0 / (2.0 * (n as f64 - 2.0));
        if alpha < -PARAM_SLACK || alpha > alpha_max + PARAM_SLACK {
            return Err(Error::ParameterOutOfRange(format!(
                "alpha {alpha} outside [0, {alpha_max}]"
            )));
        }
        if !(-PARAM_SLACK..=1.0 + PARAM_SLACK).contains(&gamma) {
            return Err(Error::ParameterOutOfRange(format!(
                "gamma {gamma} outside [0, 1]"
            )));
        }
        let beta = (1.0 - 2.0 * (n as f64 - 2.0) * alpha - gamma) / 3.0;
        if beta < -PARAM_SLACK {
            return Err(Error::ParameterOutOfRange(format!(
                "derived beta {beta} is negative (2(n-2)a + g > 1)"
            )));
        }
        Ok(Self {
            n,
            alpha: alpha.max(0.0),
            gamma: gamma.clamp(0.0, 1.0),
            beta: beta.max(0.0),
        })
    }

    pub fn build(&self) -> DensityMatrix {
        let dims = BipartiteDims::new(2, self.n).expect("n >= 3");
        DensityMatrix::new_unchecked(
            family_matrix(self.n, self.alpha, self.beta, self.gamma),
            dims,
        )
    }
}

/// Entries of the family in the computational basis. The φ-sector sums to
/// β(|00⟩⟨00| + |11⟩⟨11|) with no coherence; the ψ-sector block carries
/// (β±γ)/2. Writing the closed forms keeps every builder bit-identical.
fn family_matrix(n: usize, alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    let mut rho = ComplexMatrix::zeros(2 * n);
    for i in 0..2 {
        for j in 2..n {
            let idx = i * n + j;
            rho[(idx, idx)] = Complex64::new(alpha, 0.0);
        }
    }
    let (k00, k01, k10, k11) = (0, 1, n, n + 1);
    rho[(k00, k00)] = Complex64::new(beta, 0.0);
    rho[(k11, k11)] = Complex64::new(beta, 0.0);
    let diag = (beta + gamma) / 2.0;
    let cross = (beta - gamma) / 2.0;
    rho[(k01, k01)] = Complex64::new(diag, 0.0);
    rho[(k10, k10)] = Complex64::new(diag, 0.0);
    rho[(k01, k10)] = Complex64::new(cross, 0.0);
    rho[(k10, k01)] = Complex64::new(cross, 0.0);
    rho
}

/// Build ρ_(α,γ) on a 2⊗n system.
pub fn build_two_param_state(n: usize, alpha: f64, gamma: f64) -> Result<DensityMatrix> {
    Ok(TwoParamState::new(n, alpha, gamma)?.build())
}

/// The α = 0 line instantiated on 2⊗2: a Werner state
/// ((1−γ)/3)(|φ⁺⟩⟨φ⁺| + |φ⁻⟩⟨φ⁻| + |ψ⁺⟩⟨ψ⁺|) + γ|ψ⁻⟩⟨ψ⁻|.
pub fn build_werner_line(gamma: f64) -> Result<DensityMatrix> {
    if !(-PARAM_SLACK..=1.0 + PARAM_SLACK).contains(&gamma) {
        return Err(Error::ParameterOutOfRange(format!(
            "gamma {gamma} outside [0, 1]"
        )));
    }
    let gamma = gamma.clamp(0.0, 1.0);
    let beta = (1.0 - gamma) / 3.0;
    Ok(DensityMatrix::new_unchecked(
        family_matrix(2, 0.0, beta, gamma),
        BipartiteDims::new(2, 2)?,
    ))
}

/// The β = 0 line: ϱ_γ = ((1−γ)/(2(n−2))) Σ|ij⟩⟨ij| + γ|ψ⁻⟩⟨ψ⁻|,
/// i.e. ρ_(α,γ) with 2(n−2)α + γ = 1. Rank 2n−3 for 0 < γ < 1.
pub fn build_varrho(n: usize, gamma: f64) -> Result<DensityMatrix> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "varrho needs n >= 3, got {n}"
        )));
    }
    if !(-PARAM_SLACK..=1.0 + PARAM_SLACK).contains(&gamma) {
        return Err(Error::ParameterOutOfRange(format!(
            "gamma {gamma} outside [0, 1]"
        )));
    }
    let gamma = gamma.clamp(0.0, 1.0);
    let alpha = (1.0 - gamma) / (2.0 * (n as f64 - 2.0));
    build_two_param_state(n, alpha, gamma)
}

/// Parameters of the m⊗n generalization; β derived from
/// m(n−m)α + m(m+1)/2·β + m(m−1)/2·γ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HigherDimParams {
    pub m: usize,
    pub n: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub beta: f64,
}

impl HigherDimParams {
    pub fn new(m: usize, n: usize, alpha: f64, gamma: f64) -> Result<Self> {
        if m < 2 || n <= m {
            return Err(Error::ParameterOutOfRange(format!(
                "need 2 <= m < n, got m={m}, n={n}"
            )));
        }
        if alpha < -PARAM_SLACK || gamma < -PARAM_SLACK {
            return Err(Error::ParameterOutOfRange(
                "alpha and gamma must be nonnegative".into(),
            ));
        }
        let (mf, nf) = (m as f64, n as f64);
        let beta = (1.0 - mf * (nf - mf) * alpha - mf * (mf - 1.0) / 2.0 * gamma)
            / (mf * (mf + 1.0) / 2.0);
        if beta < -PARAM_SLACK {
            return Err(Error::ParameterOutOfRange(format!(
                "derived beta {beta} is negative"
            )));
        }
        Ok(Self {
            m,
            n,
            alpha: alpha.max(0.0),
            gamma: gamma.max(0.0),
            beta: beta.max(0.0),
        })
    }

    /// α Σ_{i<m≤j} |ij⟩⟨ij|
    /// + β (Σ_{i<j<m} |φ_ij⁺⟩⟨φ_ij⁺| + Σ_{k<m} |kk⟩⟨kk|)
    /// + γ Σ_{i<j<m} |φ_ij⁻⟩⟨φ_ij⁻|, with |φ_ij^±⟩ = (|ij⟩ ± |ji⟩)/√2.
    pub fn build(&self) -> DensityMatrix {
        let (m, n) = (self.m, self.n);
        let dims = BipartiteDims::new(m, n).expect("validated");
        let mut rho = ComplexMatrix::zeros(m * n);
        for i in 0..m {
            for j in m..n {
                let idx = i * n + j;
                rho[(idx, idx)] = Complex64::new(self.alpha, 0.0);
            }
        }
        for k in 0..m {
            let idx = k * n + k;
            rho[(idx, idx)] = Complex64::new(self.beta, 0.0);
        }
        // Each |φ_ij^±⟩ pair contributes the same 2×2 block pattern as the
        // base family's ψ-sector.
        let diag = (self.beta + self.gamma) / 2.0;
        let cross = (self.beta - self.gamma) / 2.0;
        for i in 0..m {
            for j in (i + 1)..m {
                let (ij, ji) = (i * n + j, j * n + i);
                rho[(ij, ij)] = Complex64::new(diag, 0.0);
                rho[(ji, ji)] = Complex64::new(diag, 0.0);
                rho[(ij, ji)] = Complex64::new(cross, 0.0);
                rho[(ji, ij)] = Complex64::new(cross, 0.0);
            }
        }
        DensityMatrix::new_unchecked(rho, dims)
    }
}

/// Build the m⊗n class state.
pub fn build_higher_dim_state(params: &HigherDimParams) -> DensityMatrix {
    params.build()
}

/// Read (α, γ) off an arbitrary 2⊗n state:
/// α = (Σ_{i∈{0,1}, j≥2} ⟨ij|ρ|ij⟩)/(2n−4), γ = ⟨ψ⁻|ρ|ψ⁻⟩.
///
/// These are exactly the parameters the twirl maps ρ onto.
pub fn extract_parameters(rho: &DensityMatrix) -> Result<(f64, f64)> {
    let dims = rho.dims();
    if dims.dim_a != 2 || dims.dim_b < 3 {
        return Err(Error::ParameterOutOfRange(format!(
            "parameter extraction needs dims (2, n >= 3), got ({}, {})",
            dims.dim_a, dims.dim_b
        )));
    }
    let n = dims.dim_b;
    let m = rho.matrix();
    let mut tail = 0.0;
    for i in 0..2 {
        for j in 2..n {
            tail += m[(i * n + j, i * n + j)].re;
        }
    }
    let alpha = tail / (2.0 * n as f64 - 4.0);
    let bell = bell_vectors(n)?;
    let gamma = expectation(m, &bell.psi_minus);
    Ok((alpha, gamma))
}

/// ⟨v|M|v⟩ for Hermitian M (real part).
pub(crate) fn expectation(m: &ComplexMatrix, v: &[Complex64]) -> f64 {
    let mv = m.apply(v);
    v.iter()
        .zip(&mv)
        .map(|(a, b)| (a.conj() * b).re)
        .sum()
}
