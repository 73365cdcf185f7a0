//! Measures that reduce to rotation-group optimization: the maximal singlet
//! fraction (overlap with the nearest maximally entangled state) and the
//! Hilbert–Schmidt-nearest joint purification of a state's own marginals.
//!
//! Maximally entangled states have Bloch data `β = γ = 0` with `δ` orthogonal
//! of determinant −1, so both problems maximize a trace `Tr(AᵀC)` over
//! (possibly stabilizer-constrained) rotations — a Procrustes-type step solved
//! in closed form by the signed SVD, with sampling and grid oracles kept as
//! the verification path.

use nalgebra::{Matrix3, Vector3};
use rand::Rng;

use crate::bloch::{
    bloch_to_two_qubit, trace_product, BlochVector3, CorrMatrix3, TwoQubitBloch, STATE_TOL,
};
use crate::error::{Error, Result};
use crate::joint::{can_jointly_purify, joint_particular, joint_purification, JointRegime};
use crate::oracle::eig_hermitian;
use crate::purification::CENTER_THRESHOLD;
use crate::so3::{random_rotation, signed_svd3, stabilizer_rotation};

/// Sign of `det δ`, which selects the closed-form branch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetBranch {
    DetNeg,
    DetNonneg,
}

#[derive(Clone, Debug)]
pub struct SingletFractionResult {
    /// The maximal overlap, in `[¼(1 − 3), 1]` for valid states.
    pub value: f64,
    /// Correlation block of the maximally entangled state achieving the
    /// maximum: orthogonal with determinant −1.
    pub optimizer_delta: CorrMatrix3,
    pub branch: DetBranch,
}

/// Closed-form maximal singlet fraction: with `s₁ ≥ s₂ ≥ s₃` the singular
/// values of `δ`, the value is `¼(1 + s₁ + s₂ + s₃)` when `det δ < 0` and
/// `¼(1 + s₁ + s₂ − s₃)` otherwise. The optimizer is `S·diag(1,1,−1)·Tᵀ` from
/// the signed SVD of `δ`.
pub fn max_singlet_fraction(rho: &TwoQubitBloch) -> Result<SingletFractionResult> {
    let eigs = eig_hermitian(&bloch_to_two_qubit(rho))?;
    if eigs[0] < -STATE_TOL {
        return Err(Error::NotAState {
            min_eigenvalue: eigs[0],
        });
    }
    let svd = signed_svd3(&rho.delta);
    let s = svd.sigma;
    let (value, branch) = if svd.det_sign < 0.0 {
        (0.25 * (1.0 + s.x + s.y + s.z), DetBranch::DetNeg)
    } else {
        (0.25 * (1.0 + s.x + s.y - s.z), DetBranch::DetNonneg)
    };
    let optimizer_delta = svd.s.matrix()
        * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0))
        * svd.t.matrix().transpose();
    Ok(SingletFractionResult {
        value,
        optimizer_delta,
        branch,
    })
}

/// Sampling lower bound on the singlet fraction: the best of
/// `¼(1 + Tr(δᵀD))` over `D = R·diag(1,1,−1)` with Haar-random `R`.
/// Converges to the closed form from below; deterministic per RNG state.
pub fn singlet_fraction_oracle<R: Rng + ?Sized>(
    rho: &TwoQubitBloch,
    samples: usize,
    rng: &mut R,
) -> f64 {
    let flip = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0));
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples.max(1) {
        let d = random_rotation(rng).into_matrix() * flip;
        best = best.max(0.25 * (1.0 + rho.delta.dot(&d)));
    }
    best
}

/// Hilbert–Schmidt distance `√Tr((ρ_a − ρ_b)²)`, evaluated through the
/// trace-product expansion rather than the matrices.
pub fn hs_distance(a: &TwoQubitBloch, b: &TwoQubitBloch) -> f64 {
    let d2 = trace_product(a, a) - 2.0 * trace_product(a, b) + trace_product(b, b);
    d2.max(0.0).sqrt()
}

/// First-harmonic form `f(θ) = constant + cos_coeff·cos θ + sin_coeff·sin θ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierForm {
    pub constant: f64,
    pub cos_coeff: f64,
    pub sin_coeff: f64,
}

impl FourierForm {
    pub fn eval(&self, theta: f64) -> f64 {
        self.constant + self.cos_coeff * theta.cos() + self.sin_coeff * theta.sin()
    }

    pub fn amplitude(&self) -> f64 {
        self.cos_coeff.hypot(self.sin_coeff)
    }

    pub fn max_value(&self) -> f64 {
        self.constant + self.amplitude()
    }

    /// Maximizing angle in `[0, 2π)`.
    pub fn argmax(&self) -> f64 {
        let t = self.sin_coeff.atan2(self.cos_coeff);
        if t < 0.0 {
            t + std::f64::consts::TAU
        } else {
            t
        }
    }
}

/// Reduces `F(C_θ) = Tr(EᵀD C_θ)` over the stabilizer of `γ` to a first
/// harmonic in `θ`. With `EᵀD = Σᵢ σᵢ vᵢwᵢᵀ` (signed SVD, sign folded into
/// `σ₃`) and `γ̂` the unit axis, the components `pᵢ = ⟨vᵢ, γ̂⟩`,
/// `sᵢ = ⟨wᵢ, γ̂⟩` and in-plane projections `xᵢ = vᵢ − pᵢγ̂`, `yᵢ = wᵢ − sᵢγ̂`
/// give
///
/// ```text
/// constant = Σ σᵢpᵢsᵢ,  cos_coeff = Σ σᵢ⟨yᵢ, xᵢ⟩,  sin_coeff = Σ σᵢ⟨yᵢ, γ̂×xᵢ⟩.
/// ```
pub fn f_theta_coefficients(
    e: &CorrMatrix3,
    d: &CorrMatrix3,
    gamma: &BlochVector3,
) -> Result<FourierForm> {
    let n = gamma.norm();
    if n < CENTER_THRESHOLD {
        return Err(Error::ZeroGamma);
    }
    let ghat = gamma / n;
    let svd = signed_svd3(&(e.transpose() * d));
    let sigma = svd.effective_sigma();
    let mut form = FourierForm {
        constant: 0.0,
        cos_coeff: 0.0,
        sin_coeff: 0.0,
    };
    for i in 0..3 {
        let v = svd.s.matrix().column(i).into_owned();
        let w = svd.t.matrix().column(i).into_owned();
        let p = v.dot(&ghat);
        let s = w.dot(&ghat);
        let x = v - p * ghat;
        let y = w - s * ghat;
        form.constant += sigma[i] * p * s;
        form.cos_coeff += sigma[i] * y.dot(&x);
        form.sin_coeff += sigma[i] * y.dot(&ghat.cross(&x));
    }
    Ok(form)
}

#[derive(Clone, Debug)]
pub struct NearestJointResult {
    /// Optimal stabilizer angle in `[0, 2π)` (0 when the angle is degenerate).
    pub theta_star: f64,
    /// Hilbert–Schmidt distance to the minimizer.
    pub distance: f64,
    /// Maximum of `F(C) = Tr(EᵀDC)` over the admissible rotations.
    pub f_max: f64,
    /// The reduced objective; constant form when `γ = 0`.
    pub fourier: FourierForm,
    /// The nearest joint purification itself.
    pub minimizer: TwoQubitBloch,
}

/// Nearest joint purification of a state's own marginals: minimizes the
/// Hilbert–Schmidt distance from `rho` over the joint-purification family of
/// `(β, γ)`, via the closed-form maximum of the first-harmonic reduction (or
/// full Procrustes when `γ = 0`, where the stabilizer is unconstrained).
pub fn nearest_joint_purification(rho: &TwoQubitBloch) -> Result<NearestJointResult> {
    let beta = rho.beta;
    let gamma = rho.gamma;
    if !can_jointly_purify(&beta, &gamma, STATE_TOL) {
        return Err(Error::MarginalMismatch {
            beta_norm: beta.norm(),
            gamma_norm: gamma.norm(),
        });
    }
    let family = joint_particular(&beta, &gamma)?;
    let e = rho.delta;
    let d = family.delta_tilde;

    let (theta_star, f_max, fourier, minimizer) = if gamma.norm() < CENTER_THRESHOLD {
        // unconstrained Procrustes over all rotations
        let svd = signed_svd3(&(e.transpose() * d));
        let sigma = svd.effective_sigma();
        let f_max = sigma.x + sigma.y + sigma.z;
        let c = svd.t.matrix() * svd.s.matrix().transpose();
        let delta = d * c;
        let minimizer = TwoQubitBloch::new(beta, delta.transpose() * beta, delta);
        let fourier = FourierForm {
            constant: f_max,
            cos_coeff: 0.0,
            sin_coeff: 0.0,
        };
        (0.0, f_max, fourier, minimizer)
    } else {
        let fourier = f_theta_coefficients(&e, &d, &gamma)?;
        let theta_star = match family.regime {
            JointRegime::Boundary => 0.0,
            _ => fourier.argmax(),
        };
        let minimizer = joint_purification(&family, theta_star);
        (theta_star, fourier.max_value(), fourier, minimizer)
    };

    let distance = hs_distance(rho, &minimizer);
    Ok(NearestJointResult {
        theta_star,
        distance,
        f_max,
        fourier,
        minimizer,
    })
}

/// Grid evaluation of `F(C_θ) = Tr(EᵀD C_θ)` for the product state
/// `E = βγᵀ`, whose joint purifications are all equidistant: reports the
/// max-minus-min spread (ideally 0) and the common value (ideally `‖β‖²`).
#[derive(Clone, Copy, Debug)]
pub struct EquidistanceReport {
    pub spread: f64,
    pub value: f64,
}

pub fn equidistance_check(
    beta: &BlochVector3,
    gamma: &BlochVector3,
    grid: usize,
) -> Result<EquidistanceReport> {
    if beta.norm() < CENTER_THRESHOLD {
        return Err(Error::ZeroVector);
    }
    let family = joint_particular(beta, gamma)?;
    let e = beta * gamma.transpose();
    let a_t = (e.transpose() * family.delta_tilde).transpose();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut sum = 0.0;
    let grid = grid.max(2);
    for k in 0..grid {
        let theta = std::f64::consts::TAU * k as f64 / grid as f64;
        let c = stabilizer_rotation(gamma, theta)?;
        let f = a_t.dot(c.matrix());
        lo = lo.min(f);
        hi = hi.max(f);
        sum += f;
    }
    Ok(EquidistanceReport {
        spread: hi - lo,
        value: sum / grid as f64,
    })
}
