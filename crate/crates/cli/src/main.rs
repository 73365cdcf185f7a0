//! Batch front end: parse state files, dispatch to the library, emit JSON.
//!
//! Exit codes: 0 on success, 1 on malformed input, 2 on domain errors with a
//! machine-readable payload on stderr. All sampling is seeded, so output is
//! byte-identical across runs for identical inputs, flags and seeds.

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nalgebra::{DVector, Vector3};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use purifykit::bloch::{
    bloch_to_qubit, bloch_to_two_qubit, qubit_to_bloch_with_tol, trace_product,
    two_qubit_to_bloch_with_tol, TwoQubitBloch, STATE_TOL,
};
use purifykit::io::{
    matrix3_rows, matrix_to_json, parse_state, qudit_to_json, to_json_string, two_qubit_to_json,
    IoError, MatrixJson, ParsedState, QubitBlochJson, TwoQubitBlochJson,
};
use purifykit::joint::{joint_particular, joint_purification, JointRegime};
use purifykit::measures::{
    hs_distance, max_singlet_fraction, nearest_joint_purification, singlet_fraction_oracle,
    DetBranch,
};
use purifykit::oracle::{eig_hermitian, grid_max_theta, sampled_max_so3, GridSpec};
use purifykit::purification::purification;
use purifykit::qudit::{
    density_from_seed, is_pure_qudit, matrix_to_qudit_with_tol, qudit_to_matrix, QuditBloch,
};
use purifykit::so3::{from_axis_angle, stabilizer_rotation, AxisAngle};
use purifykit::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "purifykit",
    version,
    about = "Bloch-picture purifications of qubit states and the measures built on them"
)]
struct Cli {
    /// Tolerance for state-validity checks.
    #[arg(long, global = true, env = "PURIFYKIT_TOL")]
    tol: Option<f64>,

    /// Seed for all sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Input state file; stdin when omitted.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a density matrix (dim 2, 3 or 4) into Bloch coordinates.
    Decompose,
    /// Reconstruct the density matrix from Bloch coordinates.
    Reconstruct,
    /// Enumerate a purification of a qubit state.
    Purify(PurifyArgs),
    /// Construct a joint purification of two marginals.
    JointPurify(JointPurifyArgs),
    /// Maximal singlet fraction of a two-qubit state.
    SingletFraction(SingletFractionArgs),
    /// Nearest joint purification of a state's own marginals.
    NearestJoint(NearestJointArgs),
    /// Generalized Bloch operations for qudits (n = 2, 3).
    Qudit(QuditArgs),
    /// Re-run closed-form results against the brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PurifyArgs {
    /// Bloch vector of the state to purify, e.g. "[0,0,0.5]".
    #[arg(long)]
    beta: String,
    /// Family coordinate as "[azimuth,polar,angle]"; identity when omitted.
    #[arg(long)]
    axis_angle: Option<String>,
}

#[derive(Args)]
struct JointPurifyArgs {
    #[arg(long)]
    beta: String,
    #[arg(long)]
    gamma: String,
    /// Stabilizer angle selecting the family member.
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
}

#[derive(Args)]
struct SingletFractionArgs {
    /// Also report the sampling oracle at this many samples.
    #[arg(long)]
    oracle_samples: Option<usize>,
    /// Shorthand for --oracle-samples 100000.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct NearestJointArgs {
    /// Also report a grid search over the stabilizer at this many points.
    #[arg(long)]
    grid: Option<usize>,
    /// Shorthand for --grid 10000.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct QuditArgs {
    #[command(subcommand)]
    verb: QuditVerb,
}

#[derive(Subcommand)]
enum QuditVerb {
    /// Density matrix to generalized Bloch coefficients.
    Decompose,
    /// Generalized Bloch coefficients to density matrix.
    Reconstruct,
    /// Coefficient-level purity test.
    Purity,
    /// Build a density matrix from a free seed vector.
    Seed(QuditSeedArgs),
}

#[derive(Args)]
struct QuditSeedArgs {
    #[arg(long)]
    n: usize,
    /// Seed coefficients, e.g. "[0.5,0,0,0,0,0,0,0]".
    #[arg(long)]
    beta0: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 100_000)]
    oracle_samples: usize,
    #[arg(long, default_value_t = 10_000)]
    grid: usize,
}

enum CliError {
    /// Malformed input: exit 1, plain message on stderr.
    Input(String),
    /// Domain error: exit 2, JSON payload on stderr.
    Domain(Value),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Domain(domain_payload(&e))
    }
}

fn domain_payload(e: &CoreError) -> Value {
    match e {
        CoreError::NotHermitian { max_dev } => {
            json!({"error": "not_hermitian", "max_dev": max_dev})
        }
        CoreError::TraceNotOne { trace } => json!({"error": "trace_not_one", "trace": trace}),
        CoreError::BlochNormExceeded { norm } => {
            json!({"error": "bloch_norm_exceeded", "norm": norm})
        }
        CoreError::SeedNormExceeded { norm_sq, limit } => {
            json!({"error": "seed_norm_exceeded", "norm_sq": norm_sq, "limit": limit})
        }
        CoreError::NotRotation { residual } => {
            json!({"error": "not_rotation", "residual": residual})
        }
        CoreError::NormMismatch { left, right } => {
            json!({"error": "norm_mismatch", "left": left, "right": right})
        }
        CoreError::ZeroVector => json!({"error": "zero_vector"}),
        CoreError::NotInterior { beta_norm } => {
            json!({"error": "not_interior", "beta_norm": beta_norm})
        }
        CoreError::NotJointlyPurifiable {
            beta_norm,
            gamma_norm,
        } => json!({"error": "norm_mismatch", "beta_norm": beta_norm, "gamma_norm": gamma_norm}),
        CoreError::WrongRegime => json!({"error": "wrong_regime"}),
        CoreError::NotAState { min_eigenvalue } => {
            json!({"error": "not_a_state", "min_eigenvalue": min_eigenvalue})
        }
        CoreError::MarginalMismatch {
            beta_norm,
            gamma_norm,
        } => {
            json!({"error": "marginal_mismatch", "beta_norm": beta_norm, "gamma_norm": gamma_norm})
        }
        CoreError::UnsupportedDimension { n } => json!({"error": "unsupported_dimension", "n": n}),
        CoreError::DimensionMismatch { expected, found } => {
            json!({"error": "dimension_mismatch", "expected": expected, "found": found})
        }
        CoreError::ZeroGamma => json!({"error": "zero_gamma"}),
        CoreError::InvalidGrid { points, low, high } => {
            json!({"error": "invalid_grid", "points": points, "low": low, "high": high})
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            std::process::exit(0);
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(CliError::Domain(payload)) => {
            eprintln!("{}", serde_json::to_string(&payload).expect("payload"));
            std::process::exit(2);
        }
    }
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let tol = cli.tol.unwrap_or(STATE_TOL);
    match &cli.command {
        Command::Decompose => decompose(cli, tol),
        Command::Reconstruct => reconstruct(cli),
        Command::Purify(args) => purify(args),
        Command::JointPurify(args) => joint_purify(args),
        Command::SingletFraction(args) => singlet_fraction(cli, args, tol),
        Command::NearestJoint(args) => nearest_joint(cli, args, tol),
        Command::Qudit(args) => qudit(cli, args, tol),
        Command::Verify(args) => verify(cli, args, tol),
    }
}

fn read_input(cli: &Cli) -> Result<String, CliError> {
    match &cli.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn read_state(cli: &Cli) -> Result<ParsedState, CliError> {
    Ok(parse_state(&read_input(cli)?)?)
}

fn parse_vector3(text: &str) -> Result<Vector3<f64>, CliError> {
    let v: [f64; 3] = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("expected a JSON 3-vector: {e}")))?;
    Ok(Vector3::from_column_slice(&v))
}

fn require_two_qubit(state: ParsedState, tol: f64) -> Result<TwoQubitBloch, CliError> {
    match state {
        ParsedState::TwoQubit(s) => Ok(s),
        ParsedState::Matrix(m) if m.nrows() == 4 => Ok(two_qubit_to_bloch_with_tol(&m, tol)?),
        _ => Err(CliError::Input(
            "expected a two-qubit state (4x4 matrix or beta/gamma/delta JSON)".into(),
        )),
    }
}

fn decompose(cli: &Cli, tol: f64) -> Result<String, CliError> {
    match read_state(cli)? {
        ParsedState::Matrix(m) => match m.nrows() {
            2 => {
                let b = qubit_to_bloch_with_tol(&m, tol)?;
                Ok(to_json_string(&QubitBlochJson { beta: b.into() }))
            }
            3 => Ok(to_json_string(&qudit_to_json(&matrix_to_qudit_with_tol(
                &m, tol,
            )?))),
            4 => Ok(to_json_string(&two_qubit_to_json(
                &two_qubit_to_bloch_with_tol(&m, tol)?,
            ))),
            d => Err(CliError::Input(format!("unsupported matrix dimension {d}"))),
        },
        _ => Err(CliError::Input(
            "decompose expects a matrix JSON ({\"dim\", \"matrix\"})".into(),
        )),
    }
}

fn reconstruct(cli: &Cli) -> Result<String, CliError> {
    let matrix = match read_state(cli)? {
        ParsedState::TwoQubit(s) => bloch_to_two_qubit(&s),
        ParsedState::Qubit(b) => bloch_to_qubit(&b)?,
        ParsedState::Qudit(q) => qudit_to_matrix(&q)?,
        ParsedState::Matrix(_) => {
            return Err(CliError::Input(
                "reconstruct expects Bloch-coordinate JSON, not a matrix".into(),
            ))
        }
    };
    Ok(to_json_string(&matrix_to_json(&matrix)))
}

#[derive(Serialize)]
struct PurifyOutput {
    state: TwoQubitBlochJson,
    matrix: MatrixJson,
}

fn purify(args: &PurifyArgs) -> Result<String, CliError> {
    let beta = parse_vector3(&args.beta)?;
    let rotation = match &args.axis_angle {
        None => purifykit::so3::Rotation3::identity(),
        Some(text) => {
            let a = parse_vector3(text)?;
            from_axis_angle(&AxisAngle::new(a.x, a.y, a.z))
        }
    };
    let state = purification(&beta, &rotation)?;
    Ok(to_json_string(&PurifyOutput {
        state: two_qubit_to_json(&state),
        matrix: matrix_to_json(&bloch_to_two_qubit(&state)),
    }))
}

#[derive(Serialize)]
struct JointPurifyOutput {
    regime: &'static str,
    state: TwoQubitBlochJson,
    matrix: MatrixJson,
}

fn regime_name(regime: JointRegime) -> &'static str {
    match regime {
        JointRegime::Generic => "GENERIC",
        JointRegime::Center => "CENTER",
        JointRegime::Boundary => "BOUNDARY",
    }
}

fn joint_purify(args: &JointPurifyArgs) -> Result<String, CliError> {
    let beta = parse_vector3(&args.beta)?;
    let gamma = parse_vector3(&args.gamma)?;
    let family = joint_particular(&beta, &gamma)?;
    let state = joint_purification(&family, args.theta);
    Ok(to_json_string(&JointPurifyOutput {
        regime: regime_name(family.regime),
        state: two_qubit_to_json(&state),
        matrix: matrix_to_json(&bloch_to_two_qubit(&state)),
    }))
}

#[derive(Serialize)]
struct SingletFractionOutput {
    value: f64,
    branch: &'static str,
    optimizer_delta: [[f64; 3]; 3],
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_gap: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

fn singlet_fraction(cli: &Cli, args: &SingletFractionArgs, tol: f64) -> Result<String, CliError> {
    let state = require_two_qubit(read_state(cli)?, tol)?;
    let result = max_singlet_fraction(&state)?;
    let samples = args.oracle_samples.or(args.verify.then_some(100_000));
    let mut out = SingletFractionOutput {
        value: result.value,
        branch: match result.branch {
            DetBranch::DetNeg => "DET_NEG",
            DetBranch::DetNonneg => "DET_NONNEG",
        },
        optimizer_delta: matrix3_rows(&result.optimizer_delta),
        oracle_samples: None,
        oracle_value: None,
        oracle_gap: None,
        seed: None,
    };
    if let Some(samples) = samples {
        let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
        let sampled = singlet_fraction_oracle(&state, samples, &mut rng);
        out.oracle_samples = Some(samples);
        out.oracle_value = Some(sampled);
        out.oracle_gap = Some(result.value - sampled);
        out.seed = Some(cli.seed);
    }
    Ok(to_json_string(&out))
}

#[derive(Serialize)]
struct FourierOutput {
    constant: f64,
    cos_coeff: f64,
    sin_coeff: f64,
}

#[derive(Serialize)]
struct NearestJointOutput {
    theta_star: f64,
    f_max: f64,
    distance: f64,
    fourier: FourierOutput,
    minimizer: TwoQubitBlochJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid_theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    grid_value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_gap: Option<f64>,
}

fn nearest_joint(cli: &Cli, args: &NearestJointArgs, tol: f64) -> Result<String, CliError> {
    let state = require_two_qubit(read_state(cli)?, tol)?;
    let result = nearest_joint_purification(&state)?;
    let mut out = NearestJointOutput {
        theta_star: result.theta_star,
        f_max: result.f_max,
        distance: result.distance,
        fourier: FourierOutput {
            constant: result.fourier.constant,
            cos_coeff: result.fourier.cos_coeff,
            sin_coeff: result.fourier.sin_coeff,
        },
        minimizer: two_qubit_to_json(&result.minimizer),
        grid_points: None,
        grid_theta: None,
        grid_value: None,
        value_gap: None,
    };
    let grid_points = args.grid.or(args.verify.then_some(10_000));
    if let Some(points) = grid_points {
        if state.gamma.norm() > 1e-12 {
            let family = joint_particular(&state.beta, &state.gamma)?;
            let a_t = (state.delta.transpose() * family.delta_tilde).transpose();
            let grid = GridSpec::full_circle(points)?;
            let (theta, value) = grid_max_theta(
                |t| {
                    a_t.dot(
                        stabilizer_rotation(&state.gamma, t)
                            .expect("gamma != 0")
                            .matrix(),
                    )
                },
                &grid,
            );
            out.grid_points = Some(points);
            out.grid_theta = Some(theta);
            out.grid_value = Some(value);
            out.value_gap = Some(result.f_max - value);
        }
    }
    Ok(to_json_string(&out))
}

#[derive(Serialize)]
struct QuditPurityOutput {
    n: usize,
    is_pure: bool,
    norm_residual: f64,
    cup_residual: f64,
}

#[derive(Serialize)]
struct QuditSeedOutput {
    n: usize,
    beta: Vec<f64>,
    kappa: f64,
}

fn parse_dvector(text: &str) -> Result<DVector<f64>, CliError> {
    let v: Vec<f64> = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("expected a JSON vector: {e}")))?;
    Ok(DVector::from_vec(v))
}

fn require_qudit(state: ParsedState, tol: f64) -> Result<QuditBloch, CliError> {
    match state {
        ParsedState::Qudit(q) => Ok(q),
        ParsedState::Matrix(m) => Ok(matrix_to_qudit_with_tol(&m, tol)?),
        ParsedState::Qubit(b) => Ok(QuditBloch {
            n: 2,
            beta: DVector::from_column_slice(b.as_slice()),
        }),
        ParsedState::TwoQubit(_) => Err(CliError::Input(
            "qudit verbs expect a single-system state, not a two-qubit one".into(),
        )),
    }
}

fn qudit(cli: &Cli, args: &QuditArgs, tol: f64) -> Result<String, CliError> {
    match &args.verb {
        QuditVerb::Decompose => match read_state(cli)? {
            ParsedState::Matrix(m) => Ok(to_json_string(&qudit_to_json(
                &matrix_to_qudit_with_tol(&m, tol)?,
            ))),
            _ => Err(CliError::Input(
                "qudit decompose expects a matrix JSON".into(),
            )),
        },
        QuditVerb::Reconstruct => {
            let q = require_qudit(read_state(cli)?, tol)?;
            Ok(to_json_string(&matrix_to_json(&qudit_to_matrix(&q)?)))
        }
        QuditVerb::Purity => {
            let q = require_qudit(read_state(cli)?, tol)?;
            let d = purifykit::qudit::d_tensor(&purifykit::qudit::gellmann_basis(q.n)?);
            let cup = purifykit::qudit::cup_product(&q.beta, &q.beta, &d)?;
            let nf = q.n as f64;
            let norm_residual = (q.beta.norm_squared() - (nf * nf - nf) / 2.0).abs();
            let cup_residual = (&q.beta * (nf - 2.0) - cup).norm();
            Ok(to_json_string(&QuditPurityOutput {
                n: q.n,
                is_pure: is_pure_qudit(&q, tol)?,
                norm_residual,
                cup_residual,
            }))
        }
        QuditVerb::Seed(seed_args) => {
            let beta0 = parse_dvector(&seed_args.beta0)?;
            let q = density_from_seed(seed_args.n, &beta0)?;
            let nf = seed_args.n as f64;
            let kappa = ((nf * nf - 2.0 * beta0.norm_squared()).max(0.0) / nf).sqrt();
            Ok(to_json_string(&QuditSeedOutput {
                n: q.n,
                beta: q.beta.iter().copied().collect(),
                kappa,
            }))
        }
    }
}

#[derive(Serialize)]
struct VerifyCheck {
    name: &'static str,
    gap: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct VerifyOutput {
    checks: Vec<VerifyCheck>,
    all_pass: bool,
}

fn verify(cli: &Cli, args: &VerifyArgs, tol: f64) -> Result<String, CliError> {
    let state = require_two_qubit(read_state(cli)?, tol)?;
    let mut checks = Vec::new();
    let push = |name: &'static str, gap: f64, tolerance: f64, checks: &mut Vec<VerifyCheck>| {
        checks.push(VerifyCheck {
            name,
            gap,
            tolerance,
            pass: gap <= tolerance,
        });
    };

    // reconstruction round trip
    let back = two_qubit_to_bloch_with_tol(&bloch_to_two_qubit(&state), tol)?;
    push(
        "bloch_round_trip",
        state.max_abs_diff(&back),
        1e-13,
        &mut checks,
    );

    // trace-product formula against the direct matrix trace
    let direct = {
        let m = bloch_to_two_qubit(&state);
        (&m * &m).trace().re
    };
    push(
        "trace_product_formula",
        (trace_product(&state, &state) - direct).abs(),
        1e-12,
        &mut checks,
    );

    // purity report against the spectrum
    let eigs = eig_hermitian(&bloch_to_two_qubit(&state))?;
    let spectral_pure = eigs[..3].iter().all(|v| v.abs() <= 1e-9) && (eigs[3] - 1.0).abs() <= 1e-9;
    let report_pure = purifykit::bloch::purity_report(&state, 1e-9).is_pure;
    push(
        "purity_spectral_agreement",
        if spectral_pure == report_pure {
            0.0
        } else {
            1.0
        },
        0.5,
        &mut checks,
    );

    // closed-form singlet fraction dominates the sampling oracle
    let closed = max_singlet_fraction(&state)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let sampled = singlet_fraction_oracle(&state, args.oracle_samples, &mut rng);
    push(
        "singlet_fraction_oracle_gap",
        closed.value - sampled,
        5e-3,
        &mut checks,
    );
    push(
        "singlet_fraction_lower_bound",
        (sampled - closed.value).max(0.0),
        1e-10,
        &mut checks,
    );

    // nearest joint purification, when the marginals admit one: grid search
    // over the stabilizer circle, or Haar sampling over all rotations when
    // the stabilizer constraint is vacuous (gamma = 0)
    if purifykit::joint::can_jointly_purify(&state.beta, &state.gamma, tol) {
        let result = nearest_joint_purification(&state)?;
        let family = joint_particular(&state.beta, &state.gamma)?;
        let a_t = (state.delta.transpose() * family.delta_tilde).transpose();
        if state.gamma.norm() > 1e-12 {
            let grid = GridSpec::full_circle(args.grid)?;
            let (_, grid_value) = grid_max_theta(
                |t| {
                    a_t.dot(
                        stabilizer_rotation(&state.gamma, t)
                            .expect("gamma != 0")
                            .matrix(),
                    )
                },
                &grid,
            );
            push(
                "nearest_joint_grid_gap",
                (result.f_max - grid_value).abs(),
                1e-7,
                &mut checks,
            );
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let (_, sampled) = sampled_max_so3(
                |c| a_t.dot(c.matrix()),
                args.oracle_samples,
                &mut rng,
                None,
            );
            push(
                "nearest_joint_so3_oracle_gap",
                result.f_max - sampled,
                5e-2,
                &mut checks,
            );
            push(
                "nearest_joint_so3_lower_bound",
                (sampled - result.f_max).max(0.0),
                1e-10,
                &mut checks,
            );
        }
        push(
            "nearest_joint_distance_consistency",
            (result.distance - hs_distance(&state, &result.minimizer)).abs(),
            1e-10,
            &mut checks,
        );
    }

    let all_pass = checks.iter().all(|c| c.pass);
    let report = VerifyOutput { checks, all_pass };
    if all_pass {
        Ok(to_json_string(&report))
    } else {
        Err(CliError::Domain(json!({
            "error": "verification_failed",
            "report": serde_json::to_value(&report).expect("report"),
        })))
    }
}
