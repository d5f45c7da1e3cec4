use thiserror::Error;

/// Errors shared by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max |A - A\u{2020}| = {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (max |U\u{2020}U - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("unitary does not preserve the 2 \u{2295} (n-2) block split (leakage {leakage:.3e})")]
    NotBlockPreserving { leakage: f64 },

    #[error("not a valid density matrix: {0}")]
    NotDensity(String),

    #[error("state vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("invalid matrix data: {0}")]
    InvalidMatrix(String),

    #[error("decomposition size {k} is below the state rank {rank}")]
    RankDeficient { k: usize, rank: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
