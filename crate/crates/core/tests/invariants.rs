//! Cross-module invariants, run on counted seeded samples (exact trial
//! budgets) with proptest covering the purely algebraic identities.

mod common;

use common::{random_admissible_state, random_ball, random_state, rng};
use nalgebra::{Matrix3, Vector3};
use proptest::prelude::*;
use purifykit::bloch::{
    adjugate3, bloch_to_qubit, bloch_to_two_qubit, purity_report, qubit_to_bloch, trace_product,
    two_qubit_to_bloch, TwoQubitBloch,
};
use purifykit::joint::{joint_particular, joint_purification};
use purifykit::measures::{hs_distance, max_singlet_fraction, singlet_fraction_oracle};
use purifykit::oracle::eig_hermitian;
use purifykit::purification::{particular_delta, purification, verify_system};
use purifykit::so3::{random_rotation, signed_svd3, stabilizer_rotation};
use rand::Rng;

#[test]
fn bloch_round_trips_hold_at_machine_precision() {
    let mut r = rng(101);
    for _ in 0..1000 {
        let s = TwoQubitBloch::new(
            Vector3::from_fn(|_, _| r.random_range(-1.0..1.0)),
            Vector3::from_fn(|_, _| r.random_range(-1.0..1.0)),
            Matrix3::from_fn(|_, _| r.random_range(-1.0..1.0)),
        );
        let back = two_qubit_to_bloch(&bloch_to_two_qubit(&s)).unwrap();
        assert!(s.max_abs_diff(&back) <= 1e-13);
    }
    for _ in 0..1000 {
        let b = random_ball(&mut r, 1.0);
        let back = qubit_to_bloch(&bloch_to_qubit(&b).unwrap()).unwrap();
        assert!((b - back).amax() <= 1e-13);
    }
}

#[test]
fn extracted_marginals_stay_in_the_ball() {
    let mut r = rng(102);
    for _ in 0..500 {
        let s = random_state(&mut r);
        assert!(s.beta.norm() <= 1.0 + 1e-12);
        assert!(s.gamma.norm() <= 1.0 + 1e-12);
    }
}

#[test]
fn pure_states_satisfy_the_closed_identities() {
    let mut r = rng(103);
    for _ in 0..500 {
        let beta = random_ball(&mut r, 0.999);
        let c = random_rotation(&mut r);
        let s = purification(&beta, &c).unwrap();

        // marginal norms agree and det δ = ‖β‖² − 1
        assert!((s.beta.norm() - s.gamma.norm()).abs() <= 1e-10);
        assert!((s.delta.determinant() - (s.beta.norm_squared() - 1.0)).abs() <= 1e-10);

        // the defining identities
        assert!((s.beta - s.delta * s.gamma).norm() <= 1e-10);
        assert!((s.gamma - s.delta.transpose() * s.beta).norm() <= 1e-10);
        let delta_eq = s.delta + adjugate3(&s.delta).transpose() - s.beta * s.gamma.transpose();
        assert!(delta_eq.norm() <= 1e-10);
        let norm_sum = s.beta.norm_squared() + s.gamma.norm_squared() + s.delta.norm_squared();
        assert!((norm_sum - 3.0).abs() <= 1e-10);

        // trace identity of the correlation block
        assert!(
            ((s.delta * s.delta.transpose()).trace() - (3.0 - 2.0 * s.beta.norm_squared())).abs()
                <= 1e-11
        );
    }
}

#[test]
fn purity_report_matches_spectral_test() {
    let mut r = rng(104);
    for trial in 0..300 {
        let s = if trial % 2 == 0 {
            purification(&random_ball(&mut r, 0.999), &random_rotation(&mut r)).unwrap()
        } else {
            random_state(&mut r)
        };
        let is_pure = purity_report(&s, 1e-9).is_pure;
        let eigs = eig_hermitian(&bloch_to_two_qubit(&s)).unwrap();
        let spectral = eigs[3..].iter().all(|v| (v - 1.0).abs() <= 1e-9)
            && eigs[..3].iter().all(|v| v.abs() <= 1e-9);
        assert_eq!(is_pure, spectral, "trial {trial}");
    }
}

#[test]
fn signed_svd_matches_independent_eigensolver() {
    let mut r = rng(105);
    for _ in 0..200 {
        let a: Matrix3<f64> = Matrix3::from_fn(|_, _| r.random_range(-2.0..2.0));
        let svd = signed_svd3(&a);
        let gram = a.transpose() * a;
        let gram_c = purifykit::bloch::ComplexMatrix::from_fn(3, 3, |i, j| {
            num_complex::Complex64::new(gram[(i, j)], 0.0)
        });
        let mut eigs = eig_hermitian(&gram_c).unwrap();
        eigs.reverse();
        for (sigma, eig) in svd.sigma.iter().zip(&eigs) {
            assert!((sigma - eig.max(0.0).sqrt()).abs() <= 1e-10);
        }
    }
}

#[test]
fn stabilizer_closure_of_the_joint_family() {
    let mut r = rng(106);
    let beta = Vector3::new(0.25, -0.1, 0.35);
    let gamma = Vector3::new(0.2, 0.3, -0.1).normalize() * beta.norm();
    let family = joint_particular(&beta, &gamma).unwrap();

    // rotations fixing γ stay inside the constrained family
    for _ in 0..100 {
        let theta = r.random_range(0.0..std::f64::consts::TAU);
        let c = stabilizer_rotation(&gamma, theta).unwrap();
        let delta = family.delta_tilde * c.matrix();
        assert!(verify_system(&delta, &beta) <= 1e-11);
        assert!((delta.transpose() * beta - gamma).norm() <= 1e-12);
    }

    // generic rotations leave it: the γ constraint picks up a real residual
    let mut violations = 0;
    for _ in 0..100 {
        let c = random_rotation(&mut r);
        let delta = family.delta_tilde * c.matrix();
        let residual = (delta.transpose() * beta - gamma).norm();
        if residual > 1e-6 {
            violations += 1;
        }
    }
    assert_eq!(violations, 100);
}

#[test]
fn sampled_singlet_fraction_converges_from_below() {
    let mut r = rng(107);
    let mut worst_gap: f64 = 0.0;
    for _ in 0..50 {
        let state = random_state(&mut r);
        let closed = max_singlet_fraction(&state).unwrap().value;
        let sampled = singlet_fraction_oracle(&state, 100_000, &mut r);
        assert!(sampled <= closed + 1e-10);
        worst_gap = worst_gap.max(closed - sampled);
    }
    assert!(worst_gap <= 5e-3, "worst closed-vs-sampled gap {worst_gap}");
}

#[test]
fn joint_purification_parametrization_is_faithful() {
    let mut r = rng(108);
    for _ in 0..50 {
        let norm = r.random_range(0.05..0.95);
        let beta = common::random_unit(&mut r) * norm;
        let gamma = common::random_unit(&mut r) * norm;
        let family = joint_particular(&beta, &gamma).unwrap();
        let thetas: Vec<f64> = (0..6)
            .map(|k| std::f64::consts::TAU * k as f64 / 6.0)
            .collect();
        let states: Vec<_> = thetas
            .iter()
            .map(|&t| joint_purification(&family, t))
            .collect();
        for i in 0..states.len() {
            for j in (i + 1)..states.len() {
                assert!(states[i].max_abs_diff(&states[j]) > 1e-9);
            }
        }
    }
}

proptest! {
    #[test]
    fn trace_product_equals_matrix_trace(
        b1 in proptest::array::uniform3(-0.5f64..0.5),
        g1 in proptest::array::uniform3(-0.5f64..0.5),
        d1 in proptest::array::uniform9(-0.5f64..0.5),
        b2 in proptest::array::uniform3(-0.5f64..0.5),
        g2 in proptest::array::uniform3(-0.5f64..0.5),
        d2 in proptest::array::uniform9(-0.5f64..0.5),
    ) {
        let a = TwoQubitBloch::new(
            Vector3::from_column_slice(&b1),
            Vector3::from_column_slice(&g1),
            Matrix3::from_row_slice(&d1),
        );
        let b = TwoQubitBloch::new(
            Vector3::from_column_slice(&b2),
            Vector3::from_column_slice(&g2),
            Matrix3::from_row_slice(&d2),
        );
        let direct = (bloch_to_two_qubit(&a) * bloch_to_two_qubit(&b)).trace().re;
        prop_assert!((trace_product(&a, &b) - direct).abs() <= 1e-12);
    }

    #[test]
    fn adjugate_identity(entries in proptest::array::uniform9(-2.0f64..2.0)) {
        let m = Matrix3::from_row_slice(&entries);
        let residual = m * adjugate3(&m) - Matrix3::identity() * m.determinant();
        prop_assert!(residual.norm() <= 1e-12);
    }

    #[test]
    fn hs_distance_is_a_metric_against_matrices(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let a = random_admissible_state(&mut r);
        let b = random_admissible_state(&mut r);
        let diff = bloch_to_two_qubit(&a) - bloch_to_two_qubit(&b);
        let direct = (&diff * &diff).trace().re.max(0.0).sqrt();
        prop_assert!((hs_distance(&a, &b) - direct).abs() <= 1e-12);
        prop_assert!(hs_distance(&a, &a) == 0.0);
        prop_assert!((hs_distance(&a, &b) - hs_distance(&b, &a)).abs() <= 1e-15);
    }

    #[test]
    fn particular_delta_always_solves_the_system(
        dir in proptest::array::uniform3(-1.0f64..1.0),
        scale in 0.0f64..1.0,
    ) {
        let v = Vector3::from_column_slice(&dir);
        prop_assume!(v.norm() > 1e-6);
        let beta = v.normalize() * scale;
        let family = particular_delta(&beta).unwrap();
        prop_assert!(verify_system(&family.delta_particular, &beta) <= 1e-8);
    }
}
