//! Two-parameter 2⊗n bipartite states: construction, LOCC twirling, and
//! entanglement measures.
//!
//! The crate is organized around five pieces:
//!
//! - [`matrix`] / [`eig`] / [`linalg`]: dense complex matrices, a Jacobi
//!   Hermitian eigensolver, partial transpose/trace, and entropy functions;
//! - [`states`]: the two-parameter family ρ_(α,γ), its Werner and β = 0
//!   lines, and the m⊗n generalization;
//! - [`twirl`]: the exact LOCC protocol that maps any 2⊗n state onto the
//!   family, plus Haar-sampled bilateral twirling;
//! - [`measures`]: negativity, formation-entanglement bounds, exact values
//!   on the special lines, and region classification;
//! - [`roof`]: a convex-roof optimizer used as the independent oracle for
//!   the formation entanglement.
//!
//! All public operations are pure functions of their inputs; values are
//! immutable once built and safe to share across threads.

pub mod density;
pub mod eig;
pub mod error;
pub mod linalg;
pub mod matrix;
pub mod measures;
pub mod roof;
pub mod states;
pub mod twirl;

pub use density::DensityMatrix;
pub use eig::{hermitian_eig, HermitianEigen};
pub use error::{Error, Result};
pub use linalg::{
    binary_entropy, partial_trace_b, partial_transpose, trace_distance, trace_norm,
    von_neumann_entropy, BipartiteDims,
};
pub use matrix::{ComplexMatrix, EQUALITY_TOL, HERMITICITY_TOL, PSD_SLACK};
pub use measures::{
    classify_region, cllh_lower_bound, concurrence_2x2, curly_e, eof_exact_varrho,
    eof_exact_werner, eof_lower_bound, eof_upper_bound, negativity, negativity_closed_form,
    pure_state_entanglement, report, EntanglementReport, RegionLabel,
};
pub use roof::{convex_roof_estimate, convex_roof_search, ConvexRoofConfig, RoofSearch};
pub use states::{
    bell_vectors, build_higher_dim_state, build_two_param_state, build_varrho, build_werner_line,
    extract_parameters, BellVectors, HigherDimParams, TwoParamState,
};
pub use twirl::{
    apply_bilateral, check_uu_invariance, class_residual, haar_unitary, monte_carlo_twirl,
    protocol_steps, sample_g2n, twirl_pipeline, u_cycle_t, u_flip_k, u_hadamard, u_swap01,
    u_theta, LocalUnitary, MixtureStep,
};
