//! Every purification of a qubit state `ρ = ½(I₂ + Σβᵢσᵢ)`.
//!
//! A two-qubit pure state with first marginal `β` has correlation block `δ`
//! solving
//!
//! ```text
//! δδᵀ = (1 − ‖β‖²) I₃ + ββᵀ,      det δ = ‖β‖² − 1,
//! ```
//!
//! and conversely any solution, together with `γ = δᵀβ`, yields a
//! purification. The full solution set is `δ = δ̃ C` with `C` ranging over the
//! rotation group and `δ̃` one particular solution.

use nalgebra::{Matrix3, Vector3};

use crate::bloch::{clamp_unit_ball, BlochVector3, CorrMatrix3, TwoQubitBloch, STATE_TOL};
use crate::error::{Error, Result};
use crate::so3::Rotation3;

/// `‖β‖` below which the marginal is treated as maximally mixed.
pub const CENTER_THRESHOLD: f64 = 1e-12;
/// `‖β‖` above which the marginal is treated as pure.
pub const BOUNDARY_THRESHOLD: f64 = 1.0 - 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PurificationRegime {
    /// `β = 0`: the family is every rotation applied to `diag(1, 1, −1)`.
    Center,
    /// `0 < ‖β‖ < 1`: the family is faithfully parametrized by rotations.
    Interior,
    /// `‖β‖ = 1`: `δ = βuᵀ` over unit `u`; rotations fixing `β`'s image are redundant.
    Boundary,
}

pub fn classify_regime(beta_norm: f64) -> PurificationRegime {
    if beta_norm < CENTER_THRESHOLD {
        PurificationRegime::Center
    } else if beta_norm > BOUNDARY_THRESHOLD {
        PurificationRegime::Boundary
    } else {
        PurificationRegime::Interior
    }
}

/// A particular solution `δ̃` of the purification system for a fixed `β`,
/// anchoring the family `δ = δ̃ C`.
#[derive(Clone, Copy, Debug)]
pub struct PurificationFamily {
    pub beta: BlochVector3,
    pub delta_particular: CorrMatrix3,
    pub regime: PurificationRegime,
}

impl PurificationFamily {
    /// The member at rotation `c`: `δ = δ̃ C`, `γ = δᵀβ`.
    pub fn purify(&self, c: &Rotation3) -> TwoQubitBloch {
        let delta = self.delta_particular * c.matrix();
        TwoQubitBloch {
            beta: self.beta,
            gamma: delta.transpose() * self.beta,
            delta,
        }
    }
}

/// One closed-form solution of the system, per regime:
/// `diag(1, 1, −1)` at the center, `ββᵀ` on the boundary, and in between the
/// negated symmetric square root
/// `−[β̂β̂ᵀ + √(1−‖β‖²)(I₃ − β̂β̂ᵀ)]`, whose determinant is `‖β‖² − 1 < 0`.
pub fn particular_delta(beta: &BlochVector3) -> Result<PurificationFamily> {
    let beta = clamp_unit_ball(beta, STATE_TOL)?;
    let n = beta.norm();
    let regime = classify_regime(n);
    let delta_particular = match regime {
        PurificationRegime::Center => Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0)),
        PurificationRegime::Boundary => beta * beta.transpose(),
        PurificationRegime::Interior => {
            let hat = beta / n;
            let along = hat * hat.transpose();
            let across = Matrix3::identity() - along;
            -(along + across * (1.0 - n * n).max(0.0).sqrt())
        }
    };
    Ok(PurificationFamily {
        beta,
        delta_particular,
        regime,
    })
}

/// Residual of the purification system:
/// `max(‖δδᵀ − (1−‖β‖²)I₃ − ββᵀ‖_F, |det δ − (‖β‖² − 1)|)`; zero exactly on
/// solutions.
pub fn verify_system(delta: &CorrMatrix3, beta: &BlochVector3) -> f64 {
    let n2 = beta.norm_squared();
    let gram =
        delta * delta.transpose() - Matrix3::identity() * (1.0 - n2) - beta * beta.transpose();
    gram.norm().max((delta.determinant() - (n2 - 1.0)).abs())
}

/// The purification of `β` at family coordinate `c`.
pub fn purification(beta: &BlochVector3, c: &Rotation3) -> Result<TwoQubitBloch> {
    Ok(particular_delta(beta)?.purify(c))
}

/// Whether two family coordinates yield the same state. Away from the
/// boundary this forces `c1 = c2`; on the boundary every rotation with
/// `c1ᵀβ = c2ᵀβ` collapses to one state.
pub fn family_equivalence(beta: &BlochVector3, c1: &Rotation3, c2: &Rotation3) -> Result<bool> {
    let family = particular_delta(beta)?;
    Ok(family.purify(c1).max_abs_diff(&family.purify(c2)) <= STATE_TOL)
}

/// Rank-one-update check that any two solutions differ by a rotation: returns
/// `‖CCᵀ − I₃‖_F + |det C − 1|` for `C = δ₂⁻¹δ₁`. Requires an invertible
/// family (`‖β‖ < 1`).
pub fn woodbury_crosscheck(
    beta: &BlochVector3,
    delta1: &CorrMatrix3,
    delta2: &CorrMatrix3,
) -> Result<f64> {
    let n = beta.norm();
    if n > BOUNDARY_THRESHOLD {
        return Err(Error::NotInterior { beta_norm: n });
    }
    let inv = delta2
        .try_inverse()
        .ok_or(Error::NotInterior { beta_norm: n })?;
    let c = inv * delta1;
    Ok((c * c.transpose() - Matrix3::identity()).norm() + (c.determinant() - 1.0).abs())
}
