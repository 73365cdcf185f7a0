//! Bloch-picture toolkit for qubit states: exact conversions between density
//! matrices and real Bloch coordinates, closed-form construction of every
//! purification and joint purification of given marginals, and the
//! entanglement measures those parametrizations reduce to rotation-group
//! optimization — each closed form paired with an independent brute-force
//! oracle.
//!
#![doc = include_str!("../../../README.md")]

pub mod bloch;
pub mod error;
pub mod io;
pub mod joint;
pub mod measures;
pub mod oracle;
pub mod purification;
pub mod qudit;
pub mod so3;

pub use bloch::{
    adjugate3, bloch_to_qubit, bloch_to_two_qubit, mixed_from_seed, partial_trace_first,
    partial_trace_second, pauli_basis, purity_report, qubit_to_bloch, trace_product,
    two_qubit_to_bloch, BlochVector3, ComplexMatrix, CorrMatrix3, PurityReport, TwoQubitBloch,
    ALGEBRA_TOL, STATE_TOL,
};
pub use error::{Error, Result};
pub use joint::{
    can_jointly_purify, joint_particular, joint_purification, joint_purification_center,
    JointFamily, JointRegime,
};
pub use measures::{
    equidistance_check, f_theta_coefficients, hs_distance, max_singlet_fraction,
    nearest_joint_purification, singlet_fraction_oracle, DetBranch, EquidistanceReport,
    FourierForm, NearestJointResult, SingletFractionResult,
};
pub use oracle::{eig_hermitian, eig_hermitian_full, grid_max_theta, sampled_max_so3, GridSpec};
pub use purification::{
    family_equivalence, particular_delta, purification, verify_system, woodbury_crosscheck,
    PurificationFamily, PurificationRegime,
};
pub use qudit::{
    cup_product, d_tensor, density_from_seed, gellmann_basis, is_pure_qudit, matrix_to_qudit,
    qudit_to_matrix, DTensor, GellMannBasis, QuditBloch,
};
pub use so3::{
    from_axis_angle, random_rotation, rotation_aligning, signed_svd3, stabilizer_rotation,
    to_axis_angle, AxisAngle, Rotation3, SignedSvd3,
};
