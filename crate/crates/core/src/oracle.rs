//! Brute-force verification engines: an independent Hermitian eigensolver,
//! grid search over angles, and rotation sampling. These deliberately share
//! no code with the closed-form paths they are used to check.

use nalgebra::Vector3;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bloch::{cx, hermiticity_deviation, ComplexMatrix, STATE_TOL};
use crate::error::{Error, Result};
use crate::so3::{random_rotation, stabilizer_rotation, Rotation3};

/// Uniform evaluation grid over a closed interval.
#[derive(Clone, Copy, Debug)]
pub struct GridSpec {
    points: usize,
    range_low: f64,
    range_high: f64,
}

impl GridSpec {
    pub fn new(points: usize, range_low: f64, range_high: f64) -> Result<Self> {
        let ordered = range_low.partial_cmp(&range_high) == Some(std::cmp::Ordering::Less);
        if points < 2 || !ordered {
            return Err(Error::InvalidGrid {
                points,
                low: range_low,
                high: range_high,
            });
        }
        Ok(Self {
            points,
            range_low,
            range_high,
        })
    }

    /// Grid over a full angle period `[0, 2π]`.
    pub fn full_circle(points: usize) -> Result<Self> {
        Self::new(points, 0.0, std::f64::consts::TAU)
    }

    pub fn points(&self) -> usize {
        self.points
    }
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(eig_hermitian_full(m)?.0)
}

/// Eigenvalues (ascending) and the matching unitary of column eigenvectors,
/// computed by cyclic Jacobi sweeps with unitary plane rotations.
pub fn eig_hermitian_full(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    let n = m.nrows();
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    let dev = hermiticity_deviation(m);
    if dev > STATE_TOL {
        return Err(Error::NotHermitian { max_dev: dev });
    }

    let mut a = (m + m.adjoint()) * cx(0.5, 0.0);
    let mut vecs = ComplexMatrix::identity(n, n);
    let scale = a
        .iter()
        .map(|e| e.norm_sqr())
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);

    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }

        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let g = a[(p, q)];
                let gn = g.norm();
                if gn <= 1e-300 {
                    continue;
                }
                let phase = g / gn;
                let alpha = a[(p, p)].re;
                let beta = a[(q, q)].re;
                let theta = (beta - alpha) / (2.0 * gn);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                // plane rotation J: J_pp = c, J_pq = s, J_qp = −s·e^{−iφ}, J_qq = c·e^{−iφ}
                let jpq = cx(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;

                // A ← J† A J, accumulating V ← V J
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = akp * c + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                    let (vkp, vkq) = (vecs[(k, p)], vecs[(k, q)]);
                    vecs[(k, p)] = vkp * c + vkq * jqp;
                    vecs[(k, q)] = vkp * jpq + vkq * jqq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = apk * c + aqk * jqp.conj();
                    a[(q, k)] = apk * jpq.conj() + aqk * jqq.conj();
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut sorted_vecs = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        sorted_vecs.set_column(dst, &vecs.column(src));
    }
    Ok((values, sorted_vecs))
}

/// Argmax of `f` over the uniform grid, endpoints included.
pub fn grid_max_theta<F: Fn(f64) -> f64>(f: F, grid: &GridSpec) -> (f64, f64) {
    let mut best_x = grid.range_low;
    let mut best_y = f(grid.range_low);
    for k in 1..grid.points {
        let x = grid.range_low
            + (grid.range_high - grid.range_low) * (k as f64) / ((grid.points - 1) as f64);
        let y = f(x);
        if y > best_y {
            best_x = x;
            best_y = y;
        }
    }
    (best_x, best_y)
}

/// Sampled maximum of an objective over rotations: Haar samples when
/// unconstrained, or uniform angles in the stabilizer of `constraint` (which
/// must be nonzero) when given. A feasible lower bound on the true maximum.
pub fn sampled_max_so3<F, R>(
    objective: F,
    samples: usize,
    rng: &mut R,
    constraint: Option<&Vector3<f64>>,
) -> (Rotation3, f64)
where
    F: Fn(&Rotation3) -> f64,
    R: Rng + ?Sized,
{
    let mut best_rot = Rotation3::identity();
    let mut best_val = f64::NEG_INFINITY;
    for _ in 0..samples.max(1) {
        let rot = match constraint {
            None => random_rotation(rng),
            Some(v) => stabilizer_rotation(v, rng.random_range(0.0..std::f64::consts::TAU))
                .expect("stabilizer constraint must be a nonzero vector"),
        };
        let val = objective(&rot);
        if val > best_val {
            best_rot = rot;
            best_val = val;
        }
    }
    (best_rot, best_val)
}

/// Haar-uniform 2×2 special unitary, from a uniform unit quaternion.
pub fn haar_unitary2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let n2: f64 = q.iter().map(|x| x * x).sum();
        if n2 > 1e-12 {
            let n = n2.sqrt();
            let (w, x, y, z) = (q[0] / n, q[1] / n, q[2] / n, q[3] / n);
            return ComplexMatrix::from_row_slice(
                2,
                2,
                &[
                    Complex64::new(w, -z),
                    Complex64::new(-y, -x),
                    Complex64::new(y, -x),
                    Complex64::new(w, z),
                ],
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::Matrix3;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn random_hermitian<R: Rng>(r: &mut R, n: usize) -> ComplexMatrix {
        let m = ComplexMatrix::from_fn(n, n, |_, _| {
            cx(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
        });
        (&m + m.adjoint()) * cx(0.5, 0.0)
    }

    #[test]
    fn eig_examples() {
        let quarter = ComplexMatrix::identity(4, 4) * cx(0.25, 0.0);
        let vals = eig_hermitian(&quarter).unwrap();
        for v in vals {
            assert!((v - 0.25).abs() < 1e-15);
        }

        // rank-one projector onto (|01⟩ − |10⟩)/√2
        let inv = 1.0 / 2.0_f64.sqrt();
        let psi = [cx(0.0, 0.0), cx(inv, 0.0), cx(-inv, 0.0), cx(0.0, 0.0)];
        let proj = ComplexMatrix::from_fn(4, 4, |i, j| psi[i] * psi[j].conj());
        let vals = eig_hermitian(&proj).unwrap();
        assert!(vals[0].abs() < 1e-14 && vals[2].abs() < 1e-14);
        assert!((vals[3] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn eig_reconstruction_residual() {
        let mut r = rng(21);
        for n in [2usize, 3, 4] {
            for _ in 0..50 {
                let m = random_hermitian(&mut r, n);
                let (vals, vecs) = eig_hermitian_full(&m).unwrap();
                let diag = ComplexMatrix::from_fn(n, n, |i, j| {
                    if i == j {
                        cx(vals[i], 0.0)
                    } else {
                        cx(0.0, 0.0)
                    }
                });
                let rebuilt = &vecs * diag * vecs.adjoint();
                let err = (&rebuilt - &m).iter().map(|e| e.norm()).fold(0.0, f64::max);
                assert!(err <= 1e-11, "reconstruction error {err}");
                let unit = (vecs.adjoint() * &vecs - ComplexMatrix::identity(n, n))
                    .iter()
                    .map(|e| e.norm())
                    .fold(0.0, f64::max);
                assert!(unit <= 1e-12);
                let trace_sum: f64 = vals.iter().sum();
                assert!((trace_sum - m.trace().re).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2, 2);
        m[(0, 1)] = cx(0.5, 0.0);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn grid_examples() {
        let grid = GridSpec::new(10_000, 0.0, std::f64::consts::TAU).unwrap();
        let (_, best) = grid_max_theta(f64::cos, &grid);
        assert!((best - 1.0).abs() <= 2e-8);

        let (_, c) = grid_max_theta(|_| 0.7, &grid);
        assert!(c == 0.7);

        assert!(GridSpec::new(1, 0.0, 1.0).is_err());
        assert!(GridSpec::new(10, 1.0, 0.0).is_err());
    }

    #[test]
    fn sampled_max_converges_and_is_deterministic() {
        let (_, best) = sampled_max_so3(|r| r.matrix().trace(), 100_000, &mut rng(5), None);
        assert!(best >= 2.99, "best trace {best}");

        let constraint = Vector3::z();
        let (_, v11) = sampled_max_so3(
            |r| r.matrix()[(0, 0)],
            20_000,
            &mut rng(6),
            Some(&constraint),
        );
        assert!(v11 > 0.999_999);

        let a = sampled_max_so3(|r| r.matrix()[(2, 1)], 500, &mut rng(7), None);
        let b = sampled_max_so3(|r| r.matrix()[(2, 1)], 500, &mut rng(7), None);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut r = rng(8);
        for _ in 0..200 {
            let u = haar_unitary2(&mut r);
            let dev = (u.adjoint() * &u - ComplexMatrix::identity(2, 2))
                .iter()
                .map(|e| e.norm())
                .fold(0.0, f64::max);
            assert!(dev <= 1e-14);
        }
    }

    #[test]
    fn eig_handles_degenerate_spectra() {
        // eigenvalues {−1, −1, 2} from 3 e eᵀ − I on a non-axis direction
        let e: Vector3<f64> = Vector3::new(1.0, 2.0, 2.0) / 3.0;
        let m3 = 3.0 * e * e.transpose() - Matrix3::identity();
        let m = ComplexMatrix::from_fn(3, 3, |i, j| cx(m3[(i, j)], 0.0));
        let vals = eig_hermitian(&m).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-13 && (vals[1] + 1.0).abs() < 1e-13);
        assert!((vals[2] - 2.0).abs() < 1e-13);
    }
}
