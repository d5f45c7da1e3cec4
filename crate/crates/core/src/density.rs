//! Validated density matrices with attached bipartite dimensions.

use crate::error::{Error, Result};
use crate::linalg::{min_eigenvalue, BipartiteDims};
use crate::matrix::{ComplexMatrix, HERMITICITY_TOL, PSD_SLACK};

/// Hermitian, unit-trace, positive-semidefinite matrix on a dA⊗dB system.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: BipartiteDims,
}

impl DensityMatrix {
    /// Validate and wrap: Hermitian within 1e-12, trace 1 within 1e-10,
    /// min eigenvalue ≥ −1e-12.
    pub fn new(matrix: ComplexMatrix, dims: BipartiteDims) -> Result<Self> {
        dims.check_matches(&matrix)?;
        let herm = matrix.hermiticity_deviation();
        if herm > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: herm });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > 1e-10 || trace.im.abs() > 1e-10 {
            return Err(Error::NotDensity(format!(
                "trace {:.12} deviates from 1",
                trace.re
            )));
        }
        let min = min_eigenvalue(&matrix)?;
        if min < -PSD_SLACK {
            return Err(Error::NotDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { matrix, dims })
    }

    /// Wrap without validation. For internal transforms that preserve
    /// validity exactly (unitary conjugation, convex mixing).
    pub fn new_unchecked(matrix: ComplexMatrix, dims: BipartiteDims) -> Self {
        debug_assert_eq!(matrix.dim(), dims.total());
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// U·ρ·U† with the same dims; the caller guarantees U is unitary.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Self {
        Self::new_unchecked(self.matrix.conjugate_by(u), self.dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn accepts_maximally_mixed() {
        let dims = BipartiteDims::new(2, 3).unwrap();
        let rho = ComplexMatrix::identity(6).scale_re(1.0 / 6.0);
        assert!(DensityMatrix::new(rho, dims).is_ok());
    }

    #[test]
    fn rejects_wrong_trace_and_negative() {
        let dims = BipartiteDims::new(2, 2).unwrap();
        assert!(DensityMatrix::new(ComplexMatrix::identity(4), dims).is_err());
        let signed = ComplexMatrix::from_diag(&[
            Complex64::new(1.5, 0.0),
            Complex64::new(-0.5, 0.0),
            Complex64::ZERO,
            Complex64::ZERO,
        ]);
        assert!(matches!(
            DensityMatrix::new(signed, dims),
            Err(Error::NotDensity(_))
        ));
    }

    #[test]
    fn rejects_dims_mismatch() {
        let dims = BipartiteDims::new(2, 3).unwrap();
        let rho = ComplexMatrix::identity(4).scale_re(0.25);
        assert!(matches!(
            DensityMatrix::new(rho, dims),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
