//! Dense square complex matrices, row-major storage.
//!
//! Everything downstream (states, twirls, measures) works on this one type;
//! sizes stay small (dim ≤ a few dozen) so no effort is spent on sparsity.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Max `|A[i][j] - conj(A[j][i])|` accepted when a Hermitian input is required.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Slack allowed below zero for eigenvalues of positive-semidefinite inputs.
pub const PSD_SLACK: f64 = 1e-12;
/// Default tolerance for equality assertions between computed quantities.
pub const EQUALITY_TOL: f64 = 1e-10;

/// Dense square matrix of complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Projector |v⟩⟨v| of a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(i, j)].conj())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Kronecker product with index convention |ij⟩ ↦ row i·dim(B) + j.
    pub fn kron(&self, other: &Self) -> Self {
        let (da, db) = (self.dim, other.dim);
        let mut out = Self::zeros(da * db);
        for i in 0..da {
            for j in 0..da {
                let aij = self[(i, j)];
                if aij == Complex64::ZERO {
                    continue;
                }
                for k in 0..db {
                    for l in 0..db {
                        out[(i * db + k, j * db + l)] = aij * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product A·v.
    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must match matrix dim");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max `|A[i][j] - conj(A[j][i])|` over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Max entrywise deviation of U†U from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let gram = &self.adjoint() * self;
        gram.max_abs_diff(&Self::identity(self.dim))
    }

    pub fn require_hermitian(&self) -> Result<()> {
        let dev = self.hermiticity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        Ok(())
    }

    pub fn require_unitary(&self) -> Result<()> {
        let dev = self.unitarity_deviation();
        if dev > HERMITICITY_TOL {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(())
    }

    /// U·A·U† for unitary U (the caller guarantees unitarity).
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u * &(self * &u.adjoint())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product needs equal dims");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                if aik == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Wire format: `{"dim": d, "entries": [[re, im], ...]}`, row-major.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            dim: self.dim,
            entries: self.data.iter().map(|z| [z.re, z.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.dim == 0 {
            return Err(D::Error::custom("matrix dim must be positive"));
        }
        if raw.entries.len() != raw.dim * raw.dim {
            return Err(D::Error::custom(format!(
                "expected {} entries for dim {}, got {}",
                raw.dim * raw.dim,
                raw.dim,
                raw.entries.len()
            )));
        }
        Ok(ComplexMatrix {
            dim: raw.dim,
            data: raw
                .entries
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(i2.kron(&i3), ComplexMatrix::identity(6));
    }

    #[test]
    fn kron_index_convention() {
        // diag(1,-1) ⊗ I₂ = diag(1,1,-1,-1): A-major ordering.
        let sz = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let i2 = ComplexMatrix::identity(2);
        let expect = ComplexMatrix::from_diag(&[
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(-1.0, 0.0),
            c(-1.0, 0.0),
        ]);
        assert_eq!(sz.kron(&i2), expect);
    }

    #[test]
    fn kron_flip_maps_00_to_11() {
        // (σx ⊗ σx)|00⟩ = |11⟩, expanded by hand on the 4-dim basis.
        let sx = ComplexMatrix::from_fn(2, |i, j| {
            if i != j { Complex64::ONE } else { Complex64::ZERO }
        });
        let flip = sx.kron(&sx);
        let ket00 = [Complex64::ONE, Complex64::ZERO, Complex64::ZERO, Complex64::ZERO];
        let out = flip.apply(&ket00);
        assert_eq!(out, vec![Complex64::ZERO, Complex64::ZERO, Complex64::ZERO, Complex64::ONE]);
    }

    #[test]
    fn hermiticity_deviation_detects_asymmetry() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(0.0, 1.0);
        m[(1, 0)] = c(0.0, 1.0); // conj would be -i
        assert!(m.hermiticity_deviation() > 1.0);
        assert!(m.require_hermitian().is_err());
    }

    #[test]
    fn json_round_trip_and_shape_errors() {
        let m = ComplexMatrix::from_fn(2, |i, j| c(i as f64, j as f64));
        let text = serde_json::to_string(&m).unwrap();
        let back: ComplexMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(m, back);

        let bad = r#"{"dim": 2, "entries": [[1.0, 0.0]]}"#;
        assert!(serde_json::from_str::<ComplexMatrix>(bad).is_err());
    }
}
