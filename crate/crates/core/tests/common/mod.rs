//! Samplers shared by the integration suites. Everything is seeded so every
//! run sees the same inputs.

use nalgebra::{Matrix3, Vector3};
use purifykit::bloch::{mixed_from_seed, TwoQubitBloch};
use purifykit::joint::{joint_particular, joint_purification};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit<R: Rng>(r: &mut R) -> Vector3<f64> {
    loop {
        let v: Vector3<f64> = Vector3::from_fn(|_, _| r.random_range(-1.0..1.0));
        if v.norm() > 1e-3 && v.norm() <= 1.0 {
            return v.normalize();
        }
    }
}

/// Bloch vector uniform in direction with norm up to `max_norm`.
pub fn random_ball<R: Rng>(r: &mut R, max_norm: f64) -> Vector3<f64> {
    random_unit(r) * r.random_range(0.0..max_norm)
}

/// A guaranteed two-qubit state through the seed construction.
pub fn random_state<R: Rng>(r: &mut R) -> TwoQubitBloch {
    let v: Vector3<f64> = Vector3::from_fn(|_, _| r.random_range(-1.0..1.0));
    let g: Vector3<f64> = Vector3::from_fn(|_, _| r.random_range(-1.0..1.0));
    let d: Matrix3<f64> = Matrix3::from_fn(|_, _| r.random_range(-1.0..1.0));
    let total = (v.norm_squared() + g.norm_squared() + d.norm_squared()).sqrt();
    let scale = r.random_range(0.0..1.9) / total.max(1e-9);
    mixed_from_seed(&(v * scale), &(g * scale), &(d * scale)).unwrap()
}

/// A state whose marginals have matched norms: a mixture of joint
/// purifications of one `(β, γ)` pair with the maximally mixed state.
pub fn random_admissible_state<R: Rng>(r: &mut R) -> TwoQubitBloch {
    let norm = r.random_range(0.05..0.9);
    let beta = random_unit(r) * norm;
    let gamma = random_unit(r) * norm;
    let family = joint_particular(&beta, &gamma).unwrap();
    let w1 = r.random_range(0.1..0.6);
    let w2 = r.random_range(0.1..(1.0 - w1));
    let a = joint_purification(&family, r.random_range(0.0..TAU));
    let b = joint_purification(&family, r.random_range(0.0..TAU));
    TwoQubitBloch::new(
        w1 * a.beta + w2 * b.beta,
        w1 * a.gamma + w2 * b.gamma,
        w1 * a.delta + w2 * b.delta,
    )
}
