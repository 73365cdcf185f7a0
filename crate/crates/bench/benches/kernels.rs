use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use purifykit::bloch::{bloch_to_two_qubit, two_qubit_to_bloch};
use purifykit::measures::{
    max_singlet_fraction, nearest_joint_purification, singlet_fraction_oracle,
};
use purifykit::oracle::eig_hermitian;
use purifykit::purification::purification;
use purifykit::qudit::{d_tensor, gellmann_basis};
use purifykit::so3::{random_rotation, signed_svd3};
use purifykit_bench::{ball_vector, random_matrix3, random_state, rng};

fn bench_bloch_round_trip(c: &mut Criterion) {
    let state = random_state(&mut rng(1));
    c.bench_function("bloch_round_trip_4x4", |b| {
        b.iter(|| {
            let m = bloch_to_two_qubit(black_box(&state));
            two_qubit_to_bloch(&m).unwrap()
        })
    });
}

fn bench_purification(c: &mut Criterion) {
    let mut r = rng(2);
    let beta = ball_vector(&mut r, 0.8);
    let rot = random_rotation(&mut r);
    c.bench_function("purification_construct", |b| {
        b.iter(|| purification(black_box(&beta), black_box(&rot)).unwrap())
    });
}

fn bench_signed_svd(c: &mut Criterion) {
    let m = random_matrix3(&mut rng(3));
    c.bench_function("signed_svd3", |b| b.iter(|| signed_svd3(black_box(&m))));
}

fn bench_eig_hermitian(c: &mut Criterion) {
    let state = random_state(&mut rng(4));
    let m = bloch_to_two_qubit(&state);
    c.bench_function("eig_hermitian_4x4", |b| {
        b.iter(|| eig_hermitian(black_box(&m)).unwrap())
    });
}

fn bench_singlet_fraction(c: &mut Criterion) {
    let state = random_state(&mut rng(5));
    c.bench_function("max_singlet_fraction", |b| {
        b.iter(|| max_singlet_fraction(black_box(&state)).unwrap())
    });
    c.bench_function("singlet_fraction_oracle_1k", |b| {
        b.iter(|| {
            let mut r = rng(6);
            singlet_fraction_oracle(black_box(&state), 1000, &mut r)
        })
    });
}

fn bench_nearest_joint(c: &mut Criterion) {
    // admissible input: marginals of matched norm
    let mut r = rng(7);
    let beta = ball_vector(&mut r, 0.5);
    let gamma = ball_vector(&mut r, 1.0).normalize() * beta.norm();
    let family = purifykit::joint::joint_particular(&beta, &gamma).unwrap();
    let pure = purifykit::joint::joint_purification(&family, 1.0);
    let state =
        purifykit::bloch::TwoQubitBloch::new(0.7 * pure.beta, 0.7 * pure.gamma, 0.7 * pure.delta);
    c.bench_function("nearest_joint_purification", |b| {
        b.iter(|| nearest_joint_purification(black_box(&state)).unwrap())
    });
}

fn bench_d_tensor(c: &mut Criterion) {
    let basis = gellmann_basis(3).unwrap();
    c.bench_function("d_tensor_qutrit", |b| {
        b.iter(|| d_tensor(black_box(&basis)))
    });
}

criterion_group!(
    benches,
    bench_bloch_round_trip,
    bench_purification,
    bench_signed_svd,
    bench_eig_hermitian,
    bench_singlet_fraction,
    bench_nearest_joint,
    bench_d_tensor,
);
criterion_main!(benches);
