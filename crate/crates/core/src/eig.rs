//! Hermitian eigendecomposition by cyclic Jacobi sweeps with complex rotations.

use num_complex::Complex64;

use crate::error::Result;
use crate::matrix::ComplexMatrix;

/// Eigenvalues ascending; eigenvector columns orthonormal, V·diag(λ)·V† = A.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// V·diag(λ)·V†, for reconstruction checks.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let scaled = ComplexMatrix::from_fn(v.dim(), |i, j| v[(i, j)] * self.eigenvalues[j]);
        &scaled * &v.adjoint()
    }
}

/// Frobenius mass of the off-diagonal part.
fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Diagonalize a Hermitian matrix.
///
/// Sweeps rotate away each off-diagonal pair in turn until the remaining
/// off-diagonal Frobenius mass drops below 1e-13·‖A‖_F. Convergence is
/// quadratic, so the sweep cap is never reached for the sizes used here.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigen> {
    a.require_hermitian()?;

    let n = a.dim();
    let mut m = a.clone();
    // Symmetrize exactly so rotations act on a perfectly Hermitian matrix.
    for i in 0..n {
        m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let target = 1e-13 * a.frobenius_norm();
    const MAX_SWEEPS: usize = 60;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = m[(p, q)];
                let babs = b.norm();
                if babs == 0.0 {
                    continue;
                }
                // Unit phase of the pivot; ψ = arg b.
                let phase = b / babs;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * babs);
                // Smaller root of t² − 2τt − 1 = 0.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J is identity except J[p][p]=c, J[p][q]=-s·e^{iψ},
                // J[q][p]=s·e^{-iψ}, J[q][q]=c; apply M ← J†MJ, V ← VJ.
                let se_pos = phase * s; // s·e^{iψ}
                let se_neg = phase.conj() * s; // s·e^{-iψ}
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * c + mkq * se_neg;
                    m[(k, q)] = mkq * c - mkp * se_pos;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = mpk * c + mqk * se_pos;
                    m[(q, k)] = mqk * c - mpk * se_neg;
                }
                m[(p, q)] = Complex64::ZERO;
                m[(q, p)] = Complex64::ZERO;
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c + vkq * se_neg;
                    v[(k, q)] = vkq * c - vkp * se_pos;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);

    Ok(HermitianEigen {
        eigenvalues,
        eigenvectors,
    })
}
