//! Conversions between complex density matrices and their real Bloch coordinates.
//!
//! A qubit state is written `ρ = ½(I₂ + Σᵢ bᵢσᵢ)` with `‖b‖ ≤ 1`, and a
//! two-qubit state as
//!
//! ```text
//! ρ = ¼(I₄ + Σᵢ βᵢ σᵢ⊗I₂ + Σᵢ γᵢ I₂⊗σᵢ + Σₗₖ δₗₖ σₗ⊗σₖ)
//! ```
//!
//! with real `β`, `γ` and a real 3×3 correlation block `δ`. All maps here are
//! exact linear reparametrizations; positivity is the caller's concern except
//! where an operation states otherwise.

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default tolerance for state-validity checks (hermiticity, trace, norms).
pub const STATE_TOL: f64 = 1e-9;
/// Default tolerance for algebraic identities between exact expressions.
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Dense complex matrix; density matrices here have dimension 2, 3 or 4.
pub type ComplexMatrix = DMatrix<Complex64>;
/// Real Bloch coordinates of a single qubit.
pub type BlochVector3 = Vector3<f64>;
/// Real 3×3 correlation block of a two-qubit state.
pub type CorrMatrix3 = Matrix3<f64>;

#[inline]
pub(crate) fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The Pauli matrices `σ₁, σ₂, σ₃` in the fixed x, y, z order.
pub fn pauli_basis() -> [ComplexMatrix; 3] {
    let o = cx(0.0, 0.0);
    let l = cx(1.0, 0.0);
    [
        ComplexMatrix::from_row_slice(2, 2, &[o, l, l, o]),
        ComplexMatrix::from_row_slice(2, 2, &[o, cx(0.0, -1.0), cx(0.0, 1.0), o]),
        ComplexMatrix::from_row_slice(2, 2, &[l, o, o, -l]),
    ]
}

/// Max entrywise deviation from hermiticity, `max |m - m†|`.
pub fn hermiticity_deviation(m: &ComplexMatrix) -> f64 {
    (m - m.adjoint())
        .iter()
        .map(|e| e.norm())
        .fold(0.0, f64::max)
}

/// Validates shape, hermiticity and unit trace, then returns the symmetrized
/// matrix `(m + m†)/2` so downstream Bloch coordinates are exactly real.
pub(crate) fn checked_hermitian_unit_trace(
    m: &ComplexMatrix,
    dim: usize,
    tol: f64,
) -> Result<ComplexMatrix> {
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: m.nrows().max(m.ncols()),
        });
    }
    let dev = hermiticity_deviation(m);
    if dev > tol {
        return Err(Error::NotHermitian { max_dev: dev });
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > tol || tr.im.abs() > tol {
        return Err(Error::TraceNotOne { trace: tr.re });
    }
    Ok((m + m.adjoint()) * cx(0.5, 0.0))
}

/// Norms in `(1, 1 + tol]` rescale to exactly 1 so numerically noisy pure
/// states survive the pipeline; anything larger is rejected.
pub(crate) fn clamp_unit_ball(b: &BlochVector3, tol: f64) -> Result<BlochVector3> {
    let n = b.norm();
    if n > 1.0 + tol {
        Err(Error::BlochNormExceeded { norm: n })
    } else if n > 1.0 {
        Ok(b / n)
    } else {
        Ok(*b)
    }
}

/// Extracts `bᵢ = Tr(ρσᵢ)` from a qubit state.
pub fn qubit_to_bloch(rho: &ComplexMatrix) -> Result<BlochVector3> {
    qubit_to_bloch_with_tol(rho, STATE_TOL)
}

pub fn qubit_to_bloch_with_tol(rho: &ComplexMatrix, tol: f64) -> Result<BlochVector3> {
    let rho = checked_hermitian_unit_trace(rho, 2, tol)?;
    let sigma = pauli_basis();
    Ok(Vector3::from_fn(|i, _| (&rho * &sigma[i]).trace().re))
}

/// Builds `½(I₂ + Σᵢ bᵢσᵢ)`; pure (rank 1) exactly when `‖b‖ = 1`.
pub fn bloch_to_qubit(b: &BlochVector3) -> Result<ComplexMatrix> {
    let b = clamp_unit_ball(b, STATE_TOL)?;
    let sigma = pauli_basis();
    let mut m = ComplexMatrix::identity(2, 2);
    for i in 0..3 {
        m += &sigma[i] * cx(b[i], 0.0);
    }
    Ok(m * cx(0.5, 0.0))
}

/// Bloch data `(β, γ, δ)` of a two-qubit state. The reconstruction
/// [`bloch_to_two_qubit`] is Hermitian with unit trace by construction, but
/// not necessarily positive.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitBloch {
    pub beta: BlochVector3,
    pub gamma: BlochVector3,
    pub delta: CorrMatrix3,
}

impl TwoQubitBloch {
    pub fn new(beta: BlochVector3, gamma: BlochVector3, delta: CorrMatrix3) -> Self {
        Self { beta, gamma, delta }
    }

    /// The maximally mixed state `I₄/4`.
    pub fn maximally_mixed() -> Self {
        Self::new(Vector3::zeros(), Vector3::zeros(), Matrix3::zeros())
    }

    /// Werner family `p·(singlet) + (1−p)·I₄/4`, correlation block `−p I₃`.
    pub fn werner(p: f64) -> Self {
        Self::new(Vector3::zeros(), Vector3::zeros(), Matrix3::identity() * -p)
    }

    /// Largest componentwise deviation across `β`, `γ` and `δ`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let b = (self.beta - other.beta).amax();
        let g = (self.gamma - other.gamma).amax();
        let d = (self.delta - other.delta).amax();
        b.max(g).max(d)
    }
}

/// Tensor-product operator basis `{σᵢ⊗I₂, I₂⊗σᵢ, σₗ⊗σₖ}`; the first tensor
/// factor is the left operand throughout.
fn two_qubit_operator(l: Option<usize>, k: Option<usize>) -> ComplexMatrix {
    let sigma = pauli_basis();
    let id2 = ComplexMatrix::identity(2, 2);
    let a = l.map_or_else(|| id2.clone(), |i| sigma[i].clone());
    let b = k.map_or(id2, |i| sigma[i].clone());
    a.kronecker(&b)
}

/// Extracts `βᵢ = Tr(ρ(σᵢ⊗I₂))`, `γᵢ = Tr(ρ(I₂⊗σᵢ))`, `δₗₖ = Tr(ρ(σₗ⊗σₖ))`.
pub fn two_qubit_to_bloch(rho: &ComplexMatrix) -> Result<TwoQubitBloch> {
    two_qubit_to_bloch_with_tol(rho, STATE_TOL)
}

pub fn two_qubit_to_bloch_with_tol(rho: &ComplexMatrix, tol: f64) -> Result<TwoQubitBloch> {
    let rho = checked_hermitian_unit_trace(rho, 4, tol)?;
    let beta = Vector3::from_fn(|i, _| (&rho * two_qubit_operator(Some(i), None)).trace().re);
    let gamma = Vector3::from_fn(|i, _| (&rho * two_qubit_operator(None, Some(i))).trace().re);
    let delta = Matrix3::from_fn(|l, k| (&rho * two_qubit_operator(Some(l), Some(k))).trace().re);
    Ok(TwoQubitBloch { beta, gamma, delta })
}

/// Reconstructs the 4×4 matrix from Bloch data. Hermitian, trace 1; PSD only
/// when the data came from a state.
pub fn bloch_to_two_qubit(s: &TwoQubitBloch) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(4, 4);
    for i in 0..3 {
        m += two_qubit_operator(Some(i), None) * cx(s.beta[i], 0.0);
        m += two_qubit_operator(None, Some(i)) * cx(s.gamma[i], 0.0);
    }
    for l in 0..3 {
        for k in 0..3 {
            m += two_qubit_operator(Some(l), Some(k)) * cx(s.delta[(l, k)], 0.0);
        }
    }
    m * cx(0.25, 0.0)
}

/// `Tr(ρ₁ρ₂) = ¼(1 + ⟨β₁,β₂⟩ + ⟨γ₁,γ₂⟩ + Tr(δ₂ᵀδ₁))`, evaluated without
/// forming either matrix.
pub fn trace_product(a: &TwoQubitBloch, b: &TwoQubitBloch) -> f64 {
    0.25 * (1.0 + a.beta.dot(&b.beta) + a.gamma.dot(&b.gamma) + a.delta.dot(&b.delta))
}

/// Marginal over the second factor: the first-qubit Bloch vector `β`.
pub fn partial_trace_second(s: &TwoQubitBloch) -> BlochVector3 {
    s.beta
}

/// Marginal over the first factor: the second-qubit Bloch vector `γ`.
pub fn partial_trace_first(s: &TwoQubitBloch) -> BlochVector3 {
    s.gamma
}

/// Residuals of the pure-state identities. A state is pure exactly when
/// `β = δγ`, `γ = δᵀβ`, `δ = −adj(δ)ᵀ + βγᵀ` and
/// `‖β‖² + ‖γ‖² + Tr(δᵀδ) = 3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PurityReport {
    /// `‖β − δγ‖`
    pub residual_beta_eq: f64,
    /// `‖γ − δᵀβ‖`
    pub residual_gamma_eq: f64,
    /// `‖δ + adj(δ)ᵀ − βγᵀ‖_F`
    pub residual_delta_eq: f64,
    /// `‖β‖² + ‖γ‖² + Tr(δᵀδ)`
    pub norm_sum: f64,
    pub is_pure: bool,
}

pub fn purity_report(s: &TwoQubitBloch, tol: f64) -> PurityReport {
    let residual_beta_eq = (s.beta - s.delta * s.gamma).norm();
    let residual_gamma_eq = (s.gamma - s.delta.transpose() * s.beta).norm();
    let residual_delta_eq =
        (s.delta + adjugate3(&s.delta).transpose() - s.beta * s.gamma.transpose()).norm();
    let norm_sum = s.beta.norm_squared() + s.gamma.norm_squared() + s.delta.norm_squared();
    let is_pure = residual_beta_eq <= tol
        && residual_gamma_eq <= tol
        && residual_delta_eq <= tol
        && (norm_sum - 3.0).abs() <= tol;
    PurityReport {
        residual_beta_eq,
        residual_gamma_eq,
        residual_delta_eq,
        norm_sum,
        is_pure,
    }
}

/// Builds a guaranteed state from free seed data `(β₀, γ₀, δ₀)` constrained to
/// `‖β₀‖² + ‖γ₀‖² + Tr(δ₀ᵀδ₀) ≤ 4`: the output is the Bloch image of `M²` for
/// the Hermitian matrix `M` with coordinates `(κ, β₀, γ₀, δ₀)/4`, hence PSD
/// with unit trace.
///
/// The rank-one term carries a plus sign: at `κ = 1` the map must fix pure
/// states, which satisfy `δ = −adj(δ)ᵀ + βγᵀ`.
pub fn mixed_from_seed(
    beta0: &BlochVector3,
    gamma0: &BlochVector3,
    delta0: &CorrMatrix3,
) -> Result<TwoQubitBloch> {
    let norm_sq = beta0.norm_squared() + gamma0.norm_squared() + delta0.norm_squared();
    if norm_sq > 4.0 + STATE_TOL {
        return Err(Error::SeedNormExceeded {
            norm_sq,
            limit: 4.0,
        });
    }
    let kappa = (4.0 - norm_sq).max(0.0).sqrt();
    let beta = 0.5 * (kappa * beta0 + delta0 * gamma0);
    let gamma = 0.5 * (kappa * gamma0 + delta0.transpose() * beta0);
    let delta = 0.5 * (kappa * delta0 - adjugate3(delta0).transpose() + beta0 * gamma0.transpose());
    Ok(TwoQubitBloch { beta, gamma, delta })
}

/// Classical adjugate of a 3×3 matrix: `m · adj(m) = det(m) I₃`.
pub fn adjugate3(m: &CorrMatrix3) -> CorrMatrix3 {
    Matrix3::new(
        m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)],
        m[(0, 2)] * m[(2, 1)] - m[(0, 1)] * m[(2, 2)],
        m[(0, 1)] * m[(1, 2)] - m[(0, 2)] * m[(1, 1)],
        m[(1, 2)] * m[(2, 0)] - m[(1, 0)] * m[(2, 2)],
        m[(0, 0)] * m[(2, 2)] - m[(0, 2)] * m[(2, 0)],
        m[(0, 2)] * m[(1, 0)] - m[(0, 0)] * m[(1, 2)],
        m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)],
        m[(0, 1)] * m[(2, 0)] - m[(0, 0)] * m[(2, 1)],
        m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
    )
}
