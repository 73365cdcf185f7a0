use thiserror::Error;

/// Errors raised by state validation and the purification constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max entrywise |m - m\u{2020}| = {max_dev:.3e})")]
    NotHermitian { max_dev: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },

    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochNormExceeded { norm: f64 },

    #[error("seed norm constraint violated: {norm_sq} > {limit}")]
    SeedNormExceeded { norm_sq: f64, limit: f64 },

    #[error("matrix is not a rotation (orthogonality residual {residual:.3e})")]
    NotRotation { residual: f64 },

    #[error("vector norms differ: {left} vs {right}")]
    NormMismatch { left: f64, right: f64 },

    #[error("zero vector where a direction is required")]
    ZeroVector,

    #[error("correlation matrix is singular on the unit sphere (|beta| = {beta_norm})")]
    NotInterior { beta_norm: f64 },

    #[error("marginals cannot be jointly purified: |beta| = {beta_norm}, |gamma| = {gamma_norm}")]
    NotJointlyPurifiable { beta_norm: f64, gamma_norm: f64 },

    #[error("operation only applies to the beta = gamma = 0 family")]
    WrongRegime,

    #[error("matrix is not a state (min eigenvalue {min_eigenvalue:.3e})")]
    NotAState { min_eigenvalue: f64 },

    #[error("marginals of the input are not jointly purifiable: |beta| = {beta_norm}, |gamma| = {gamma_norm}")]
    MarginalMismatch { beta_norm: f64, gamma_norm: f64 },

    #[error("unsupported dimension {n}")]
    UnsupportedDimension { n: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("gamma is zero; the planar reduction needs a rotation axis")]
    ZeroGamma,

    #[error(
        "invalid grid: need at least 2 points and low < high (got {points} over [{low}, {high}])"
    )]
    InvalidGrid { points: usize, low: f64, high: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
