//! Library-wide JSON formats.
//!
//! The matrix exchange format is `{"rows": n, "cols": m, "re": [...], "im":
//! [...]}` in row-major order. serde_json emits shortest round-tripping
//! decimal forms, so binary64 values survive a serialize/parse cycle exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::LinalgError;
use crate::matrix::ComplexMatrix;

/// Wire form of a complex matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: m.data().iter().map(|z| z.re).collect(),
            im: m.data().iter().map(|z| z.im).collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for ComplexMatrix {
    type Error = LinalgError;

    fn try_from(j: &MatrixJson) -> Result<Self, LinalgError> {
        if j.re.len() != j.rows * j.cols || j.im.len() != j.re.len() {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix json: {} re / {} im entries for {}x{}",
                j.re.len(),
                j.im.len(),
                j.rows,
                j.cols
            )));
        }
        ComplexMatrix::new(
            j.rows,
            j.cols,
            j.re.iter().zip(&j.im).map(|(&re, &im)| Complex64::new(re, im)).collect(),
        )
    }
}
