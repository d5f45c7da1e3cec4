//! Bipartite matrix operations and entropy functions.
//!
//! Index convention shared by the whole crate: a product basis state |ij⟩
//! (i on subsystem A, j on subsystem B) sits at flat index i·dim(B) + j.

use num_complex::Complex64;

use crate::eig::hermitian_eig;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Subsystem dimensions (dA, dB) attached to a dA·dB-dimensional matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BipartiteDims {
    pub dim_a: usize,
    pub dim_b: usize,
}

impl BipartiteDims {
    pub fn new(dim_a: usize, dim_b: usize) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::ParameterOutOfRange(
                "subsystem dimensions must be positive".into(),
            ));
        }
        Ok(Self { dim_a, dim_b })
    }

    pub fn total(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn check_matches(&self, matrix: &ComplexMatrix) -> Result<()> {
        if matrix.dim() != self.total() {
            return Err(Error::DimensionMismatch {
                expected: self.total(),
                got: matrix.dim(),
            });
        }
        Ok(())
    }
}

/// Transpose on subsystem B only: ⟨ij|ρ^{T_B}|i'j'⟩ = ⟨ij'|ρ|i'j⟩.
pub fn partial_transpose(rho: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
    dims.check_matches(rho)?;
    let (da, db) = (dims.dim_a, dims.dim_b);
    let mut out = ComplexMatrix::zeros(rho.dim());
    for i in 0..da {
        for ip in 0..da {
            for j in 0..db {
                for jp in 0..db {
                    out[(i * db + j, ip * db + jp)] = rho[(i * db + jp, ip * db + j)];
                }
            }
        }
    }
    Ok(out)
}

/// Trace out subsystem B: ⟨i|σ|i'⟩ = Σ_j ⟨ij|ρ|i'j⟩.
pub fn partial_trace_b(rho: &ComplexMatrix, dims: BipartiteDims) -> Result<ComplexMatrix> {
    dims.check_matches(rho)?;
    let (da, db) = (dims.dim_a, dims.dim_b);
    let mut out = ComplexMatrix::zeros(da);
    for i in 0..da {
        for ip in 0..da {
            let mut sum = Complex64::ZERO;
            for j in 0..db {
                sum += rho[(i * db + j, ip * db + j)];
            }
            out[(i, ip)] = sum;
        }
    }
    Ok(out)
}

/// Σ|λ_i| over the Hermitian spectrum.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(a)?;
    Ok(eig.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// ½‖A − B‖₁ for Hermitian A, B.
pub fn trace_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    Ok(0.5 * trace_norm(&(a - b))?)
}

/// Shannon entropy of a probability weight, in bits, with 0·log 0 = 0.
fn plog2p(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Binary Shannon entropy h(p) in bits.
///
/// Arguments within 1e-12 outside [0, 1] are clamped; anything further out
/// is rejected.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::ParameterOutOfRange(format!(
            "binary entropy argument {p} outside [0, 1]"
        )));
    }
    let p = p.clamp(0.0, 1.0);
    Ok(plog2p(p) + plog2p(1.0 - p))
}

/// Von Neumann entropy −Σ λ log₂ λ of a density matrix, in bits.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
        return Err(Error::NotDensity(format!(
            "trace {} deviates from 1",
            trace.re
        )));
    }
    let eig = hermitian_eig(rho)?;
    let mut entropy = 0.0;
    for &lambda in &eig.eigenvalues {
        if lambda < -1e-9 {
            return Err(Error::NotDensity(format!(
                "negative eigenvalue {lambda:.3e}"
            )));
        }
        // Slightly negative values are rounding noise; treat as 0.
        entropy += plog2p(lambda.max(0.0));
    }
    Ok(entropy)
}

/// Entropy of an eigenvalue list that is already known (skips the solve).
pub(crate) fn entropy_of_spectrum(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().map(|&l| plog2p(l.max(0.0))).sum()
}

/// Min eigenvalue check used by density-matrix validation.
pub(crate) fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    let eig = hermitian_eig(a)?;
    Ok(eig.eigenvalues[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn phi_plus_2x2() -> ComplexMatrix {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let v = [re(inv), re(0.0), re(0.0), re(inv)];
        ComplexMatrix::outer(&v)
    }

    #[test]
    fn partial_transpose_product_state_keeps_spectrum() {
        let sigma_a = ComplexMatrix::from_diag(&[re(0.7), re(0.3)]);
        let sigma_b = ComplexMatrix::from_fn(3, |i, j| {
            Complex64::new(0.1 * (i + j) as f64, 0.05 * (i as f64 - j as f64))
        });
        let sigma_b = &sigma_b + &sigma_b.adjoint();
        let rho = sigma_a.kron(&sigma_b);
        let dims = BipartiteDims::new(2, 3).unwrap();
        let pt = partial_transpose(&rho, dims).unwrap();
        assert!(pt.max_abs_diff(&sigma_a.kron(&sigma_b.transpose())) < 1e-15);

        let spec_a = hermitian_eig(&rho).unwrap().eigenvalues;
        let spec_b = hermitian_eig(&pt).unwrap().eigenvalues;
        for (x, y) in spec_a.iter().zip(&spec_b) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn partial_transpose_bell_spectrum() {
        // (|φ⁺⟩⟨φ⁺|)^{T_B} has eigenvalues {½, ½, ½, −½}: 4×4 hand computation.
        let dims = BipartiteDims::new(2, 2).unwrap();
        let pt = partial_transpose(&phi_plus_2x2(), dims).unwrap();
        let spec = hermitian_eig(&pt).unwrap().eigenvalues;
        let expect = [-0.5, 0.5, 0.5, 0.5];
        for (x, y) in spec.iter().zip(expect) {
            assert!((x - y).abs() < 1e-12);
        }
        assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_dimension_error() {
        let rho = ComplexMatrix::identity(5);
        let dims = BipartiteDims::new(2, 3).unwrap();
        assert!(matches!(
            partial_transpose(&rho, dims),
            Err(Error::DimensionMismatch { expected: 6, got: 5 })
        ));
    }

    #[test]
    fn partial_trace_product_and_pure() {
        let dims = BipartiteDims::new(2, 2).unwrap();
        // |ψ⁻⟩⟨ψ⁻| traces to I₂/2.
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let psi_minus = [re(0.0), re(inv), re(-inv), re(0.0)];
        let reduced = partial_trace_b(&ComplexMatrix::outer(&psi_minus), dims).unwrap();
        assert!(reduced.max_abs_diff(&ComplexMatrix::identity(2).scale_re(0.5)) < 1e-15);

        // |00⟩⟨00| traces to |0⟩⟨0|.
        let ket00 = [re(1.0), re(0.0), re(0.0), re(0.0)];
        let reduced = partial_trace_b(&ComplexMatrix::outer(&ket00), dims).unwrap();
        let expect = ComplexMatrix::from_diag(&[re(1.0), re(0.0)]);
        assert!(reduced.max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn trace_norm_of_signed_diagonal() {
        let a = ComplexMatrix::from_diag(&[re(0.5), re(-0.5)]);
        assert!((trace_norm(&a).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn entropy_values() {
        // Pure state → 0.
        let pure = ComplexMatrix::from_diag(&[re(1.0), re(0.0)]);
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-12);
        // Maximally mixed qubit → 1 bit.
        let mixed = ComplexMatrix::identity(2).scale_re(0.5);
        assert!((von_neumann_entropy(&mixed).unwrap() - 1.0).abs() < 1e-12);
        // diag(¼,¼,¼,¼) → 2 bits.
        let four = ComplexMatrix::identity(4).scale_re(0.25);
        assert!((von_neumann_entropy(&four).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_rejects_bad_inputs() {
        let not_unit = ComplexMatrix::identity(2);
        assert!(von_neumann_entropy(&not_unit).is_err());
        let negative = ComplexMatrix::from_diag(&[re(1.5), re(-0.5)]);
        assert!(von_neumann_entropy(&negative).is_err());
    }

    #[test]
    fn binary_entropy_values() {
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // Frozen by direct 40-digit evaluation of −p·log₂p − (1−p)·log₂(1−p).
        assert!((binary_entropy(0.95826).unwrap() - 0.250_213_923_614_602).abs() < 1e-15);
        assert!(binary_entropy(1.2).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }
}
