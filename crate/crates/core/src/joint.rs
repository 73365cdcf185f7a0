//! Joint purifications: pure two-qubit states with both marginals prescribed.
//!
//! Marginals `β, γ` admit a joint purification exactly when `‖β‖ = ‖γ‖ ≤ 1`.
//! Starting from any purification of `β`, aligning the image `δᵀβ` with `γ`
//! produces one joint purification `δ̃`; the full family is `δ̃ C` over
//! rotations `C` fixing `γ` — a circle group, except that `β = γ = 0` leaves
//! all rotations and `‖β‖ = 1` leaves a single state.

use nalgebra::Vector3;

use crate::bloch::{BlochVector3, CorrMatrix3, TwoQubitBloch, STATE_TOL};
use crate::error::{Error, Result};
use crate::purification::{particular_delta, PurificationRegime, CENTER_THRESHOLD};
use crate::so3::{rotation_aligning, stabilizer_rotation, Rotation3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JointRegime {
    /// `0 < ‖β‖ < 1`: the family is a faithful circle of states.
    Generic,
    /// `β = γ = 0`: the stabilizer constraint is vacuous; the family is all rotations.
    Center,
    /// `‖β‖ = 1`: a unique joint purification.
    Boundary,
}

/// A particular joint purification `δ̃` with `δ̃ᵀβ = γ`, anchoring the family
/// `δ = δ̃ C` over rotations fixing `γ`.
#[derive(Clone, Copy, Debug)]
pub struct JointFamily {
    pub beta: BlochVector3,
    pub gamma: BlochVector3,
    pub delta_tilde: CorrMatrix3,
    pub regime: JointRegime,
}

/// Necessary and sufficient condition for a joint purification to exist.
pub fn can_jointly_purify(beta: &BlochVector3, gamma: &BlochVector3, tol: f64) -> bool {
    let (nb, ng) = (beta.norm(), gamma.norm());
    (nb - ng).abs() <= tol && nb <= 1.0 + tol
}

/// Builds a particular joint purification by rotating the image of a plain
/// purification onto `γ`: with `δ_sp` solving the system for `β`,
/// `‖δ_spᵀβ‖ = ‖β‖ = ‖γ‖`, so an aligning rotation `R` exists and
/// `δ̃ = δ_sp Rᵀ` satisfies `δ̃ᵀβ = γ`.
pub fn joint_particular(beta: &BlochVector3, gamma: &BlochVector3) -> Result<JointFamily> {
    if !can_jointly_purify(beta, gamma, STATE_TOL) {
        return Err(Error::NotJointlyPurifiable {
            beta_norm: beta.norm(),
            gamma_norm: gamma.norm(),
        });
    }
    let base = particular_delta(beta)?;
    let image = base.delta_particular.transpose() * base.beta;
    let delta_tilde = if image.norm() < CENTER_THRESHOLD || gamma.norm() < CENTER_THRESHOLD {
        base.delta_particular
    } else {
        let align = rotation_aligning(&image.normalize(), &gamma.normalize())?;
        base.delta_particular * align.matrix().transpose()
    };
    let regime = match base.regime {
        PurificationRegime::Center => JointRegime::Center,
        PurificationRegime::Interior => JointRegime::Generic,
        PurificationRegime::Boundary => JointRegime::Boundary,
    };
    Ok(JointFamily {
        beta: base.beta,
        gamma: *gamma,
        delta_tilde,
        regime,
    })
}

/// The family member at angle `theta`: `δ = δ̃ C_θ` with `C_θ` the rotation by
/// `theta` about `γ`, which preserves `δᵀβ = γ`. On the boundary the state is
/// unique and `theta` is ignored; at the center the axis degenerates and the
/// rotation is taken about `z` (the full family needs
/// [`joint_purification_center`]).
pub fn joint_purification(family: &JointFamily, theta: f64) -> TwoQubitBloch {
    let delta = match family.regime {
        JointRegime::Boundary => family.delta_tilde,
        _ => {
            let axis = if family.gamma.norm() >= CENTER_THRESHOLD {
                family.gamma
            } else {
                Vector3::z()
            };
            let stab = stabilizer_rotation(&axis, theta).expect("axis is nonzero");
            family.delta_tilde * stab.matrix()
        }
    };
    TwoQubitBloch {
        beta: family.beta,
        gamma: delta.transpose() * family.beta,
        delta,
    }
}

/// The three-parameter family at the center (`β = γ = 0`): `δ = δ̃ C` over
/// arbitrary rotations.
pub fn joint_purification_center(family: &JointFamily, c: &Rotation3) -> Result<TwoQubitBloch> {
    if family.regime != JointRegime::Center {
        return Err(Error::WrongRegime);
    }
    let delta = family.delta_tilde * c.matrix();
    Ok(TwoQubitBloch {
        beta: family.beta,
        gamma: delta.transpose() * family.beta,
        delta,
    })
}
