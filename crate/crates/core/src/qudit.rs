//! Generalized Bloch representation for single qudits of dimension 2 and 3:
//! the Gell-Mann basis, the symmetric d-tensor of its anticommutators, the cup
//! product it induces on coefficient vectors, and the density/purity
//! characterizations expressed through them.

use std::sync::LazyLock;

use nalgebra::DVector;

use crate::bloch::{checked_hermitian_unit_trace, cx, pauli_basis, ComplexMatrix, STATE_TOL};
use crate::error::{Error, Result};

/// Orthogonal Hermitian traceless basis with `Tr(λᵢλⱼ) = 2δᵢⱼ`; the Pauli
/// matrices for `n = 2`, the eight Gell-Mann matrices in conventional order
/// for `n = 3`.
#[derive(Clone, Debug)]
pub struct GellMannBasis {
    n: usize,
    lambdas: Vec<ComplexMatrix>,
}

impl GellMannBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of basis elements, `n² − 1`.
    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn matrices(&self) -> &[ComplexMatrix] {
        &self.lambdas
    }
}

pub fn gellmann_basis(n: usize) -> Result<GellMannBasis> {
    let lambdas = match n {
        2 => pauli_basis().to_vec(),
        3 => gellmann3(),
        _ => return Err(Error::UnsupportedDimension { n }),
    };
    Ok(GellMannBasis { n, lambdas })
}

fn gellmann3() -> Vec<ComplexMatrix> {
    let o = cx(0.0, 0.0);
    let l = cx(1.0, 0.0);
    let i = cx(0.0, 1.0);
    let r3 = 1.0 / 3.0_f64.sqrt();
    vec![
        ComplexMatrix::from_row_slice(3, 3, &[o, l, o, l, o, o, o, o, o]),
        ComplexMatrix::from_row_slice(3, 3, &[o, -i, o, i, o, o, o, o, o]),
        ComplexMatrix::from_row_slice(3, 3, &[l, o, o, o, -l, o, o, o, o]),
        ComplexMatrix::from_row_slice(3, 3, &[o, o, l, o, o, o, l, o, o]),
        ComplexMatrix::from_row_slice(3, 3, &[o, o, -i, o, o, o, i, o, o]),
        ComplexMatrix::from_row_slice(3, 3, &[o, o, o, o, o, l, o, l, o]),
        ComplexMatrix::from_row_slice(3, 3, &[o, o, o, o, o, -i, o, i, o]),
        ComplexMatrix::from_row_slice(
            3,
            3,
            &[
                cx(r3, 0.0),
                o,
                o,
                o,
                cx(r3, 0.0),
                o,
                o,
                o,
                cx(-2.0 * r3, 0.0),
            ],
        ),
    ]
}

/// Totally symmetric structure constants of the basis anticommutators:
/// `λₖλₗ + λₗλₖ = (4/n)δₖₗ Iₙ + 2 Σᵢ dₖₗᵢ λᵢ` with `dₖₗᵢ = ¼Tr({λₖ,λₗ}λᵢ)`.
#[derive(Clone, Debug)]
pub struct DTensor {
    n: usize,
    len: usize,
    data: Vec<f64>,
}

impl DTensor {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Index range of each slot, `n² − 1`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, k: usize, l: usize, i: usize) -> f64 {
        self.data[(k * self.len + l) * self.len + i]
    }
}

pub fn d_tensor(basis: &GellMannBasis) -> DTensor {
    let len = basis.len();
    let mut data = vec![0.0; len * len * len];
    for k in 0..len {
        for l in k..len {
            let anti =
                &basis.lambdas[k] * &basis.lambdas[l] + &basis.lambdas[l] * &basis.lambdas[k];
            for i in 0..len {
                let v = 0.25 * (&anti * &basis.lambdas[i]).trace().re;
                data[(k * len + l) * len + i] = v;
                data[(l * len + k) * len + i] = v;
            }
        }
    }
    DTensor {
        n: basis.n,
        len,
        data,
    }
}

static D2: LazyLock<DTensor> = LazyLock::new(|| d_tensor(&gellmann_basis(2).unwrap()));
static D3: LazyLock<DTensor> = LazyLock::new(|| d_tensor(&gellmann_basis(3).unwrap()));

pub(crate) fn d_tensor_for(n: usize) -> Result<&'static DTensor> {
    match n {
        2 => Ok(&D2),
        3 => Ok(&D3),
        _ => Err(Error::UnsupportedDimension { n }),
    }
}

/// Symmetric bilinear cup product `(x∪y)ᵢ = Σⱼₖ dᵢⱼₖ xⱼyₖ`. Identically zero
/// for `n = 2`, where the basis anticommutes.
pub fn cup_product(x: &DVector<f64>, y: &DVector<f64>, d: &DTensor) -> Result<DVector<f64>> {
    if x.len() != d.len() || y.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: d.len(),
            found: x.len().max(y.len()),
        });
    }
    let mut out = DVector::zeros(d.len());
    for i in 0..d.len() {
        let mut acc = 0.0;
        for j in 0..d.len() {
            for k in 0..d.len() {
                acc += d.get(i, j, k) * x[j] * y[k];
            }
        }
        out[i] = acc;
    }
    Ok(out)
}

/// Bloch coefficients of an `n × n` density matrix in the Gell-Mann basis:
/// `ρ = (1/n)(Iₙ + Σᵢ βᵢλᵢ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuditBloch {
    pub n: usize,
    pub beta: DVector<f64>,
}

pub fn qudit_to_matrix(q: &QuditBloch) -> Result<ComplexMatrix> {
    let basis = gellmann_basis(q.n)?;
    if q.beta.len() != basis.len() {
        return Err(Error::DimensionMismatch {
            expected: basis.len(),
            found: q.beta.len(),
        });
    }
    let mut m = ComplexMatrix::identity(q.n, q.n);
    for (i, lambda) in basis.matrices().iter().enumerate() {
        m += lambda * cx(q.beta[i], 0.0);
    }
    Ok(m * cx(1.0 / q.n as f64, 0.0))
}

/// Inverse of [`qudit_to_matrix`]: `βᵢ = (n/2)·Tr(ρλᵢ)`.
pub fn matrix_to_qudit(rho: &ComplexMatrix) -> Result<QuditBloch> {
    matrix_to_qudit_with_tol(rho, STATE_TOL)
}

pub fn matrix_to_qudit_with_tol(rho: &ComplexMatrix, tol: f64) -> Result<QuditBloch> {
    let n = rho.nrows();
    let basis = gellmann_basis(n)?;
    let rho = checked_hermitian_unit_trace(rho, n, tol)?;
    let half_n = n as f64 / 2.0;
    let beta = DVector::from_fn(basis.len(), |i, _| {
        half_n * (&rho * &basis.matrices()[i]).trace().re
    });
    Ok(QuditBloch { n, beta })
}

/// Builds a guaranteed density matrix from a free seed `β₀` with
/// `‖β₀‖² ≤ n²/2`: the output coefficients are
/// `β = (2κ/n)β₀ + (β₀∪β₀)/n` with `κ = √((n² − 2‖β₀‖²)/n)`, the Bloch image
/// of `M²` for the Hermitian `M` with coordinates `(κ, β₀)/n`.
pub fn density_from_seed(n: usize, beta0: &DVector<f64>) -> Result<QuditBloch> {
    let d = d_tensor_for(n)?;
    if beta0.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: d.len(),
            found: beta0.len(),
        });
    }
    let limit = (n * n) as f64 / 2.0;
    let norm_sq = beta0.norm_squared();
    if norm_sq > limit + STATE_TOL {
        return Err(Error::SeedNormExceeded { norm_sq, limit });
    }
    let nf = n as f64;
    let kappa = ((nf * nf - 2.0 * norm_sq).max(0.0) / nf).sqrt();
    let cup = cup_product(beta0, beta0, d)?;
    let beta = beta0 * (2.0 * kappa / nf) + cup / nf;
    Ok(QuditBloch { n, beta })
}

/// Purity test in coefficients alone: `ρ` is pure exactly when
/// `⟨β, β⟩ = (n² − n)/2` and `(n − 2)β = β∪β`. For `n = 2` the cup condition
/// is vacuous and this is the unit-sphere test.
pub fn is_pure_qudit(q: &QuditBloch, tol: f64) -> Result<bool> {
    let d = d_tensor_for(q.n)?;
    if q.beta.len() != d.len() {
        return Err(Error::DimensionMismatch {
            expected: d.len(),
            found: q.beta.len(),
        });
    }
    let nf = q.n as f64;
    let radius_sq = (nf * nf - nf) / 2.0;
    let cup = cup_product(&q.beta, &q.beta, d)?;
    let norm_ok = (q.beta.norm_squared() - radius_sq).abs() <= tol;
    let cup_ok = (&q.beta * (nf - 2.0) - cup).norm() <= tol;
    Ok(norm_ok && cup_ok)
}
