//! Rotation-group utilities: the axis-angle chart, alignment and stabilizer
//! constructions, Haar sampling, and a determinant-signed 3×3 SVD.

use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Residual below which a matrix is accepted as special orthogonal.
pub const ROTATION_TOL: f64 = 1e-9;

/// A 3×3 special orthogonal matrix. Constructors either validate or are only
/// reachable from exactly orthogonal expressions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation3 {
    m: Matrix3<f64>,
}

/// `‖mᵀm − I₃‖_F + |det m − 1|`.
pub fn orthogonality_residual(m: &Matrix3<f64>) -> f64 {
    (m.transpose() * m - Matrix3::identity()).norm() + (m.determinant() - 1.0).abs()
}

impl Rotation3 {
    pub fn identity() -> Self {
        Self {
            m: Matrix3::identity(),
        }
    }

    /// Validates special orthogonality within [`ROTATION_TOL`].
    pub fn try_new(m: Matrix3<f64>) -> Result<Self> {
        let residual = orthogonality_residual(&m);
        if residual > ROTATION_TOL {
            Err(Error::NotRotation { residual })
        } else {
            Ok(Self { m })
        }
    }

    /// Wraps a matrix that is special orthogonal by construction.
    pub(crate) fn wrap(m: Matrix3<f64>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.m
    }

    pub fn into_matrix(self) -> Matrix3<f64> {
        self.m
    }

    pub fn transposed(&self) -> Self {
        Self {
            m: self.m.transpose(),
        }
    }

    pub fn apply(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.m * v
    }
}

impl std::ops::Mul for &Rotation3 {
    type Output = Rotation3;

    fn mul(self, rhs: &Rotation3) -> Rotation3 {
        Rotation3 { m: self.m * rhs.m }
    }
}

/// Axis-angle chart of a rotation: the unit axis
/// `e = (cos az · sin polar, sin az · sin polar, cos polar)` and the rotation
/// angle about it, counterclockwise when viewed from the axis tip.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxisAngle {
    /// Azimuth of the axis, in `[0, 2π)`.
    pub azimuth: f64,
    /// Polar angle of the axis, in `[0, π]`.
    pub polar: f64,
    /// Rotation angle, in `[0, 2π)`.
    pub angle: f64,
}

impl AxisAngle {
    pub fn new(azimuth: f64, polar: f64, angle: f64) -> Self {
        Self {
            azimuth,
            polar,
            angle,
        }
    }

    pub fn axis(&self) -> Vector3<f64> {
        Vector3::new(
            self.azimuth.cos() * self.polar.sin(),
            self.azimuth.sin() * self.polar.sin(),
            self.polar.cos(),
        )
    }

    /// Spherical coordinates of a unit axis, angles wrapped into range.
    pub fn from_axis(axis: &Vector3<f64>, angle: f64) -> Self {
        let polar = axis.z.clamp(-1.0, 1.0).acos();
        let azimuth = wrap_angle(axis.y.atan2(axis.x));
        Self {
            azimuth,
            polar,
            angle: wrap_angle(angle),
        }
    }
}

fn wrap_angle(a: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let w = a.rem_euclid(tau);
    if w == tau {
        0.0
    } else {
        w
    }
}

fn skew(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Rodrigues rotation about a unit axis:
/// `R = cos ψ · I + sin ψ · [e]× + (1 − cos ψ) · eeᵀ`.
fn rodrigues(axis: &Vector3<f64>, angle: f64) -> Matrix3<f64> {
    let (s, c) = angle.sin_cos();
    Matrix3::identity() * c + skew(axis) * s + axis * axis.transpose() * (1.0 - c)
}

pub fn from_axis_angle(a: &AxisAngle) -> Rotation3 {
    Rotation3::wrap(rodrigues(&a.axis(), a.angle))
}

/// Inverse chart. The angle lands in `[0, π]`; at the identity the axis is
/// `(0, 0, 1)` by convention, and at half turns the axis sign is arbitrary.
///
/// For angles past π/2 the axis comes from the symmetric part
/// `r + rᵀ − (tr r − 1)I = 2(1 − cos ψ) eeᵀ`, which stays well conditioned
/// where the skew part degenerates.
pub fn to_axis_angle(r: &Rotation3) -> AxisAngle {
    let m = r.matrix();
    let cos_psi = 0.5 * (m.trace() - 1.0);
    // skew part: u = sin ψ · e
    let u = 0.5
        * Vector3::new(
            m[(2, 1)] - m[(1, 2)],
            m[(0, 2)] - m[(2, 0)],
            m[(1, 0)] - m[(0, 1)],
        );
    let sin_psi = u.norm();

    if cos_psi >= 0.0 {
        if sin_psi < 1e-14 {
            return AxisAngle::from_axis(&Vector3::z(), 0.0);
        }
        AxisAngle::from_axis(&(u / sin_psi), sin_psi.atan2(cos_psi))
    } else {
        let sym = m + m.transpose() - Matrix3::identity() * (m.trace() - 1.0);
        let k = (0..3)
            .max_by(|&a, &b| sym[(a, a)].partial_cmp(&sym[(b, b)]).unwrap())
            .unwrap();
        let mut axis = sym.column(k).normalize();
        if u.dot(&axis) < 0.0 {
            axis = -axis;
        }
        let psi = u.dot(&axis).max(0.0).atan2(cos_psi);
        AxisAngle::from_axis(&axis, psi)
    }
}

/// Unit vector perpendicular to `a`: cross with the standard basis vector of
/// least overlap, ties broken toward the lower index.
fn perpendicular_axis(a: &Vector3<f64>) -> Vector3<f64> {
    let mut k = 0;
    for i in 1..3 {
        if a[i].abs() < a[k].abs() {
            k = i;
        }
    }
    let mut e = Vector3::zeros();
    e[k] = 1.0;
    a.cross(&e).normalize()
}

/// Generic alignment of unit vectors with `a·b` bounded away from −1:
/// `R = I + [a×b]× + [a×b]×² / (1 + a·b)` maps `a` to `b`.
fn align_unit(a: &Vector3<f64>, b: &Vector3<f64>) -> Matrix3<f64> {
    let k = skew(&a.cross(b));
    Matrix3::identity() + k + k * k / (1.0 + a.dot(b))
}

/// Rotation carrying `u` onto `v`; the norms must agree. Aligned inputs give
/// the identity; antipodal inputs give the half turn about the perpendicular
/// direction picked by crossing `u` with the least-overlapping basis vector
/// (ties toward the lower index).
pub fn rotation_aligning(u: &Vector3<f64>, v: &Vector3<f64>) -> Result<Rotation3> {
    let (nu, nv) = (u.norm(), v.norm());
    if nu < 1e-15 || nv < 1e-15 {
        return Err(Error::ZeroVector);
    }
    if (nu - nv).abs() > 1e-9 * nu.max(nv).max(1.0) {
        return Err(Error::NormMismatch {
            left: nu,
            right: nv,
        });
    }
    let a = u / nu;
    let b = v / nv;
    let c = a.dot(&b);
    if a.cross(&b).norm() < 1e-12 {
        return Ok(if c > 0.0 {
            Rotation3::identity()
        } else {
            let p = perpendicular_axis(&a);
            Rotation3::wrap(2.0 * p * p.transpose() - Matrix3::identity())
        });
    }
    if c < -0.99 {
        // route via a perpendicular direction: both legs stay well conditioned
        let p = perpendicular_axis(&a);
        return Ok(Rotation3::wrap(align_unit(&p, &b) * align_unit(&a, &p)));
    }
    Ok(Rotation3::wrap(align_unit(&a, &b)))
}

/// Rotation by `theta` about `gamma`, fixing `gamma` and rotating the
/// perpendicular plane.
pub fn stabilizer_rotation(gamma: &Vector3<f64>, theta: f64) -> Result<Rotation3> {
    let n = gamma.norm();
    if n < 1e-15 {
        return Err(Error::ZeroVector);
    }
    Ok(Rotation3::wrap(rodrigues(&(gamma / n), theta)))
}

/// Haar-uniform rotation from a uniform unit quaternion.
pub fn random_rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation3 {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n2: f64 = q.iter().map(|x| x * x).sum();
        if n2 > 1e-12 {
            let n = n2.sqrt();
            return Rotation3::wrap(quaternion_matrix(q[0] / n, q[1] / n, q[2] / n, q[3] / n));
        }
    }
}

fn quaternion_matrix(w: f64, x: f64, y: f64, z: f64) -> Matrix3<f64> {
    Matrix3::new(
        1.0 - 2.0 * (y * y + z * z),
        2.0 * (x * y - w * z),
        2.0 * (x * z + w * y),
        2.0 * (x * y + w * z),
        1.0 - 2.0 * (x * x + z * z),
        2.0 * (y * z - w * x),
        2.0 * (x * z - w * y),
        2.0 * (y * z + w * x),
        1.0 - 2.0 * (x * x + y * y),
    )
}

/// Determinant-signed SVD `a = s · diag(σ₁, σ₂, det_sign·σ₃) · tᵀ` with both
/// factors special orthogonal, `σ₁ ≥ σ₂ ≥ σ₃ ≥ 0`, and the sign of `det a`
/// absorbed entirely into the last diagonal slot (0 maps to +1).
#[derive(Clone, Copy, Debug)]
pub struct SignedSvd3 {
    pub s: Rotation3,
    pub t: Rotation3,
    pub sigma: Vector3<f64>,
    pub det_sign: f64,
}

impl SignedSvd3 {
    /// Diagonal with the sign folded in: `(σ₁, σ₂, det_sign·σ₃)`.
    pub fn effective_sigma(&self) -> Vector3<f64> {
        Vector3::new(self.sigma.x, self.sigma.y, self.det_sign * self.sigma.z)
    }

    pub fn reconstruct(&self) -> Matrix3<f64> {
        self.s.matrix()
            * Matrix3::from_diagonal(&self.effective_sigma())
            * self.t.matrix().transpose()
    }
}

pub fn signed_svd3(a: &Matrix3<f64>) -> SignedSvd3 {
    let svd = a.svd(true, true);
    let u0 = svd.u.expect("3x3 SVD with u requested");
    let v0 = svd.v_t.expect("3x3 SVD with v requested").transpose();
    let sv = svd.singular_values;

    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| sv[j].partial_cmp(&sv[i]).unwrap());
    let mut u = Matrix3::zeros();
    let mut v = Matrix3::zeros();
    let mut sigma = Vector3::zeros();
    for (dst, &src) in order.iter().enumerate() {
        u.set_column(dst, &u0.column(src));
        v.set_column(dst, &v0.column(src));
        sigma[dst] = sv[src];
    }

    let mut sign = 1.0;
    if u.determinant() < 0.0 {
        u.set_column(2, &(-u.column(2)));
        sign = -sign;
    }
    if v.determinant() < 0.0 {
        v.set_column(2, &(-v.column(2)));
        sign = -sign;
    }
    let det_sign = if sigma.z == 0.0 { 1.0 } else { sign };
    SignedSvd3 {
        s: Rotation3::wrap(u),
        t: Rotation3::wrap(v),
        sigma,
        det_sign,
    }
}
