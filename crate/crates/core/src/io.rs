//! JSON wire formats for states, shared by the CLI and file-based workflows.
//!
//! Complex matrices serialize as `{"dim": n, "matrix": [[{"re", "im"}, ..], ..]}`
//! with row-major nesting; two-qubit Bloch data as
//! `{"beta": [..3], "gamma": [..3], "delta": [[..3] x3]}` (row-major); qudit
//! coefficients as `{"n": n, "beta": [..n²−1]}`. Numbers round-trip at full
//! IEEE double precision and key order is fixed by the structs, so output is
//! byte-stable.

use nalgebra::{DVector, Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bloch::{cx, BlochVector3, ComplexMatrix, TwoQubitBloch};
use crate::qudit::QuditBloch;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexEntry {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub matrix: Vec<Vec<ComplexEntry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoQubitBlochJson {
    pub beta: [f64; 3],
    pub gamma: [f64; 3],
    pub delta: [[f64; 3]; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuditJson {
    pub n: usize,
    pub beta: Vec<f64>,
}

/// Single-qubit Bloch vector, `{"beta": [x, y, z]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitBlochJson {
    pub beta: [f64; 3],
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("state schema error: {0}")]
    Schema(String),
    #[error("matrix shape does not match declared dim {dim}")]
    Shape { dim: usize },
}

/// Any of the documented state schemas, auto-detected by keys.
#[derive(Clone, Debug)]
pub enum ParsedState {
    Matrix(ComplexMatrix),
    TwoQubit(TwoQubitBloch),
    Qudit(QuditBloch),
    Qubit(BlochVector3),
}

pub fn parse_state(text: &str) -> Result<ParsedState, IoError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| IoError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object()
        .ok_or_else(|| IoError::Schema("top level must be a JSON object".into()))?;

    if obj.contains_key("matrix") {
        let json: MatrixJson = from_value(value)?;
        Ok(ParsedState::Matrix(matrix_from_json(&json)?))
    } else if obj.contains_key("n") {
        let json: QuditJson = from_value(value)?;
        Ok(ParsedState::Qudit(QuditBloch {
            n: json.n,
            beta: DVector::from_vec(json.beta),
        }))
    } else if obj.contains_key("gamma") || obj.contains_key("delta") {
        let json: TwoQubitBlochJson = from_value(value)?;
        Ok(ParsedState::TwoQubit(two_qubit_from_json(&json)))
    } else if obj.contains_key("beta") {
        let json: QubitBlochJson = from_value(value)?;
        Ok(ParsedState::Qubit(Vector3::from_column_slice(&json.beta)))
    } else {
        Err(IoError::Schema(
            "expected one of the keys: matrix, n, beta".into(),
        ))
    }
}

fn from_value<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T, IoError> {
    serde_json::from_value(value).map_err(|e| IoError::Schema(e.to_string()))
}

pub fn matrix_to_json(m: &ComplexMatrix) -> MatrixJson {
    MatrixJson {
        dim: m.nrows(),
        matrix: (0..m.nrows())
            .map(|i| {
                (0..m.ncols())
                    .map(|j| ComplexEntry {
                        re: m[(i, j)].re,
                        im: m[(i, j)].im,
                    })
                    .collect()
            })
            .collect(),
    }
}

pub fn matrix_from_json(json: &MatrixJson) -> Result<ComplexMatrix, IoError> {
    if json.dim == 0
        || json.matrix.len() != json.dim
        || json.matrix.iter().any(|row| row.len() != json.dim)
    {
        return Err(IoError::Shape { dim: json.dim });
    }
    Ok(ComplexMatrix::from_fn(json.dim, json.dim, |i, j| {
        cx(json.matrix[i][j].re, json.matrix[i][j].im)
    }))
}

pub fn two_qubit_to_json(s: &TwoQubitBloch) -> TwoQubitBlochJson {
    TwoQubitBlochJson {
        beta: s.beta.into(),
        gamma: s.gamma.into(),
        delta: [
            [s.delta[(0, 0)], s.delta[(0, 1)], s.delta[(0, 2)]],
            [s.delta[(1, 0)], s.delta[(1, 1)], s.delta[(1, 2)]],
            [s.delta[(2, 0)], s.delta[(2, 1)], s.delta[(2, 2)]],
        ],
    }
}

pub fn two_qubit_from_json(json: &TwoQubitBlochJson) -> TwoQubitBloch {
    TwoQubitBloch {
        beta: Vector3::from_column_slice(&json.beta),
        gamma: Vector3::from_column_slice(&json.gamma),
        delta: Matrix3::from_fn(|i, j| json.delta[i][j]),
    }
}

/// Row-major nested array of a real 3×3 block, for embedding in CLI output.
pub fn matrix3_rows(m: &Matrix3<f64>) -> [[f64; 3]; 3] {
    [
        [m[(0, 0)], m[(0, 1)], m[(0, 2)]],
        [m[(1, 0)], m[(1, 1)], m[(1, 2)]],
        [m[(2, 0)], m[(2, 1)], m[(2, 2)]],
    ]
}

pub fn qudit_to_json(q: &QuditBloch) -> QuditJson {
    QuditJson {
        n: q.n,
        beta: q.beta.iter().copied().collect(),
    }
}

/// Stable pretty serialization with a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable value");
    out.push('\n');
    out
}
