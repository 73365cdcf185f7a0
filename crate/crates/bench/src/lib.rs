//! Deterministic input samplers for the benchmark suite.

use nalgebra::{Matrix3, Vector3};
use purifykit::bloch::{mixed_from_seed, TwoQubitBloch};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ball_vector<R: Rng>(r: &mut R, max_norm: f64) -> Vector3<f64> {
    loop {
        let v: Vector3<f64> = Vector3::from_fn(|_, _| r.random_range(-1.0..1.0));
        if v.norm() <= 1.0 && v.norm() > 1e-6 {
            return v * max_norm;
        }
    }
}

pub fn random_state<R: Rng>(r: &mut R) -> TwoQubitBloch {
    let v: Vector3<f64> = Vector3::from_fn(|_, _| r.random_range(-1.0..1.0));
    let g: Vector3<f64> = Vector3::from_fn(|_, _| r.random_range(-1.0..1.0));
    let d: Matrix3<f64> = Matrix3::from_fn(|_, _| r.random_range(-1.0..1.0));
    let total = (v.norm_squared() + g.norm_squared() + d.norm_squared()).sqrt();
    let scale = r.random_range(0.0..1.9) / total.max(1e-9);
    mixed_from_seed(&(v * scale), &(g * scale), &(d * scale)).expect("seed in the ball")
}

pub fn random_matrix3<R: Rng>(r: &mut R) -> Matrix3<f64> {
    Matrix3::from_fn(|_, _| r.random_range(-1.0..1.0))
}
