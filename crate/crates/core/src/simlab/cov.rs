use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CovKind {
    /// Unit diagonal, 0.5 off the diagonal.
    #[serde(alias = "model1", alias = "compound_symmetry_0.5")]
    CompoundSymmetry,
    /// `0.8^|i−j|`
    #[serde(alias = "model2", alias = "ar1_0.8")]
    Ar1,
    /// User-supplied matrix; cannot be built from a dimension alone.
    Explicit,
}

impl CovKind {
    pub fn label(self) -> &'static str {
        match self {
            CovKind::CompoundSymmetry => "model1",
            CovKind::Ar1 => "model2",
            CovKind::Explicit => "explicit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CovModel {
    pub kind: CovKind,
    pub matrix: DMatrix<f64>,
}

impl CovModel {
    pub fn p(&self) -> usize {
        self.matrix.nrows()
    }

    /// Wraps a symmetric positive definite matrix.
    pub fn explicit(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        if (&matrix - matrix.transpose()).amax() > 1e-12 {
            return Err(Error::invalid("covariance must be symmetric"));
        }
        if matrix.clone().cholesky().is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(CovModel {
            kind: CovKind::Explicit,
            matrix,
        })
    }
}

pub fn build_sigma(kind: CovKind, p: usize) -> Result<CovModel> {
    if p == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let matrix = match kind {
        CovKind::CompoundSymmetry => DMatrix::from_fn(p, p, |i, j| if i == j { 1.0 } else { 0.5 }),
        CovKind::Ar1 => DMatrix::from_fn(p, p, |i, j| 0.8f64.powi(i.abs_diff(j) as i32)),
        CovKind::Explicit => return Err(Error::invalid("an explicit covariance needs its matrix")),
    };
    Ok(CovModel { kind, matrix })
}
