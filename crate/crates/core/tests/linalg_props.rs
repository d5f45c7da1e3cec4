//! Property tests for the linear-algebra substrate.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qtwirl_core::{
    binary_entropy, hermitian_eig, partial_transpose, trace_norm, von_neumann_entropy,
    BipartiteDims, ComplexMatrix, DensityMatrix,
};

fn random_hermitian(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let raw = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let mut h = &raw + &raw.adjoint();
    for i in 0..dim {
        h[(i, i)] = Complex64::new(h[(i, i)].re, 0.0);
    }
    h
}

fn random_density(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let psd = &g * &g.adjoint();
    psd.scale_re(1.0 / psd.trace().re)
}

#[test]
fn partial_transpose_involution_preserves_trace_and_hermiticity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for &(da, db) in &[(2usize, 3usize), (2, 4)] {
        let dims = BipartiteDims::new(da, db).unwrap();
        for _ in 0..50 {
            let h = random_hermitian(da * db, &mut rng);
            let pt = partial_transpose(&h, dims).unwrap();
            assert!(pt.hermiticity_deviation() <= 1e-12);
            assert!((pt.trace() - h.trace()).norm() < 1e-12);
            let back = partial_transpose(&pt, dims).unwrap();
            assert_eq!(back, h); // pure entry permutation: exact
        }
    }
}

#[test]
fn trace_norm_of_density_matrices_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for dim in [4, 6, 8] {
        for _ in 0..10 {
            let rho = random_density(dim, &mut rng);
            assert!((trace_norm(&rho).unwrap() - 1.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn eigendecomposition_bounds_on_random_hermitians() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dim in [2, 4, 7, 11, 16] {
        for _ in 0..4 {
            let h = random_hermitian(dim, &mut rng);
            let eig = hermitian_eig(&h).unwrap();
            assert!(eig.reconstruct().max_abs_diff(&h) <= 1e-10);
            assert!(eig.eigenvectors.unitarity_deviation() <= 1e-10);
        }
    }
}

#[test]
fn entropy_is_additive_on_product_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let sigma_a = random_density(2, &mut rng);
        let sigma_b = random_density(3, &mut rng);
        let joint = sigma_a.kron(&sigma_b);
        let sum = von_neumann_entropy(&sigma_a).unwrap() + von_neumann_entropy(&sigma_b).unwrap();
        assert!((von_neumann_entropy(&joint).unwrap() - sum).abs() <= 1e-9);
    }
}

#[test]
fn density_matrix_validation_accepts_random_ensemble() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dims = BipartiteDims::new(2, 4).unwrap();
    for _ in 0..10 {
        let rho = random_density(8, &mut rng);
        assert!(DensityMatrix::new(rho, dims).is_ok());
    }
}

proptest! {
    #[test]
    fn binary_entropy_symmetric(p in 0.0f64..=1.0) {
        let h1 = binary_entropy(p).unwrap();
        let h2 = binary_entropy(1.0 - p).unwrap();
        prop_assert!((h1 - h2).abs() <= 1e-14);
    }

    #[test]
    fn partial_transpose_involution_prop(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims = BipartiteDims::new(2, 3).unwrap();
        let h = random_hermitian(6, &mut rng);
        let round_trip = partial_transpose(&partial_transpose(&h, dims).unwrap(), dims).unwrap();
        prop_assert_eq!(round_trip, h);
    }
}
