//! Location and scatter estimators.
//!
//! The spatial median and spatial-sign covariance are the robust pair used by
//! SSLDA; the sample mean and pooled maximum-likelihood covariance back the
//! LDA-CLIME and LS-LDA baselines.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Observations from one class, one row per observation.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    data: DMatrix<f64>,
}

impl Sample {
    /// Wraps a matrix, rejecting empty or non-finite input.
    pub fn new(data: DMatrix<f64>) -> Result<Self> {
        if data.nrows() == 0 || data.ncols() == 0 {
            return Err(Error::invalid(
                "sample must have at least one row and one column",
            ));
        }
        if let Some(idx) = data.iter().position(|v| !v.is_finite()) {
            // column-major index
            let (r, c) = (idx % data.nrows(), idx / data.nrows());
            return Err(Error::invalid(format!(
                "non-finite entry at row {r}, column {c}"
            )));
        }
        Ok(Sample { data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != p) {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: bad.len(),
            });
        }
        Sample::new(DMatrix::from_fn(rows.len(), p, |i, j| rows[i][j]))
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    pub fn p(&self) -> usize {
        self.data.ncols()
    }

    pub fn data(&self) -> &DMatrix<f64> {
        &self.data
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.data
    }

    pub fn row(&self, i: usize) -> DVector<f64> {
        self.data.row(i).transpose()
    }

    /// Sub-sample with the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Sample {
        Sample {
            data: self.data.select_rows(rows),
        }
    }
}

/// `x / ‖x‖₂`, or the zero vector when `x = 0`.
pub fn spatial_sign(x: &DVector<f64>) -> DVector<f64> {
    let norm = x.norm();
    if norm > 0.0 {
        x / norm
    } else {
        DVector::zeros(x.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeiszfeldConfig {
    /// Convergence threshold on the Euclidean norm of the update step.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for WeiszfeldConfig {
    fn default() -> Self {
        WeiszfeldConfig {
            tol: 1e-8,
            max_iter: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocationEstimate {
    pub center: DVector<f64>,
    pub iterations: usize,
    pub final_step_norm: f64,
    /// False when `max_iter` was exhausted; `center` is then the last iterate.
    pub converged: bool,
}

/// Distance below which an iterate is treated as coinciding with a data point.
const COINCIDENCE_EPS: f64 = 1e-12;

/// Spatial (geometric) median by the modified Weiszfeld iteration.
///
/// When an iterate lands on a data point, that point is dropped from the
/// weighted average and the subgradient optimality test decides whether the
/// point itself is the minimiser; if so it is returned exactly.
pub fn spatial_median(sample: &Sample, config: &WeiszfeldConfig) -> Result<LocationEstimate> {
    spatial_median_observed(sample, config, |_| {})
}

/// Same as [`spatial_median`], calling `observe` with every iterate
/// (starting point included).
pub fn spatial_median_observed<F>(
    sample: &Sample,
    config: &WeiszfeldConfig,
    mut observe: F,
) -> Result<LocationEstimate>
where
    F: FnMut(&DVector<f64>),
{
    if !(config.tol > 0.0) {
        return Err(Error::invalid("Weiszfeld tolerance must be positive"));
    }
    let x = sample.data();
    let (n, p) = (x.nrows(), x.ncols());
    let mut y = coordinate_median(x);
    observe(&y);

    let mut step_norm = f64::INFINITY;
    let mut weighted = DVector::<f64>::zeros(p);
    let mut resultant = DVector::<f64>::zeros(p);
    for iter in 1..=config.max_iter {
        weighted.fill(0.0);
        resultant.fill(0.0);
        let mut weight_sum = 0.0;
        let mut coincident = 0usize;
        for i in 0..n {
            let row = x.row(i);
            let mut dist2 = 0.0;
            for j in 0..p {
                let d = row[j] - y[j];
                dist2 += d * d;
            }
            let dist = dist2.sqrt();
            if dist <= COINCIDENCE_EPS {
                coincident += 1;
                continue;
            }
            let w = 1.0 / dist;
            weight_sum += w;
            for j in 0..p {
                weighted[j] += w * row[j];
                resultant[j] += w * (row[j] - y[j]);
            }
        }

        if weight_sum == 0.0 {
            // every observation sits on the iterate
            return Ok(LocationEstimate {
                center: y,
                iterations: iter - 1,
                final_step_norm: 0.0,
                converged: true,
            });
        }
        let mut next = &weighted / weight_sum;
        if coincident > 0 {
            let r = resultant.norm();
            let eta = coincident as f64;
            if r <= eta {
                return Ok(LocationEstimate {
                    center: y,
                    iterations: iter - 1,
                    final_step_norm: 0.0,
                    converged: true,
                });
            }
            let t = eta / r;
            next = next * (1.0 - t) + &y * t;
        }

        step_norm = (&next - &y).norm();
        y = next;
        observe(&y);
        if step_norm <= config.tol {
            return Ok(LocationEstimate {
                center: y,
                iterations: iter,
                final_step_norm: step_norm,
                converged: true,
            });
        }
    }
    Ok(LocationEstimate {
        center: y,
        iterations: config.max_iter,
        final_step_norm: step_norm,
        converged: false,
    })
}

/// Sum of Euclidean distances from the rows of `sample` to `center`.
pub fn spatial_median_objective(sample: &Sample, center: &DVector<f64>) -> f64 {
    let ct = center.transpose();
    sample.data().row_iter().map(|r| (r - &ct).norm()).sum()
}

fn coordinate_median(x: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(
        x.ncols(),
        x.column_iter().map(|col| {
            let mut v: Vec<f64> = col.iter().copied().collect();
            v.sort_by(f64::total_cmp);
            let m = v.len();
            if m % 2 == 1 {
                v[m / 2]
            } else {
                0.5 * (v[m / 2 - 1] + v[m / 2])
            }
        }),
    )
}

/// Spatial-sign covariance: average outer product of unit residual directions.
///
/// The matrix is symmetric PSD with trace equal to the fraction of rows
/// that differ from the center.
#[derive(Debug, Clone, PartialEq)]
pub struct SignCovariance(DMatrix<f64>);

impl SignCovariance {
    /// Wraps a matrix after checking it is square and symmetric.
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                found: m.ncols(),
            });
        }
        let asym = (&m - m.transpose()).amax();
        if asym > 1e-12 {
            return Err(Error::invalid(format!(
                "matrix is not symmetric (max asymmetry {asym:e})"
            )));
        }
        Ok(SignCovariance(m))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }
}

pub fn sign_covariance(sample: &Sample, center: &DVector<f64>) -> Result<SignCovariance> {
    let p = sample.p();
    if center.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: center.len(),
        });
    }
    let n = sample.n();
    let mut signs = sample.data().clone();
    for mut row in signs.row_iter_mut() {
        row -= center.transpose();
        let norm = row.norm();
        if norm > 0.0 {
            row /= norm;
        } else {
            row.fill(0.0);
        }
    }
    let mut s = signs.tr_mul(&signs) / n as f64;
    symmetrize(&mut s);
    Ok(SignCovariance(s))
}

/// `(n1·S1 + n2·S2) / (n1 + n2)`.
pub fn pooled_sign_covariance(
    s1: &SignCovariance,
    s2: &SignCovariance,
    n1: usize,
    n2: usize,
) -> Result<SignCovariance> {
    if s1.dim() != s2.dim() {
        return Err(Error::DimensionMismatch {
            expected: s1.dim(),
            found: s2.dim(),
        });
    }
    if n1 == 0 || n2 == 0 {
        return Err(Error::invalid("class sizes must be positive"));
    }
    let total = (n1 + n2) as f64;
    let (w1, w2) = (n1 as f64 / total, n2 as f64 / total);
    Ok(SignCovariance(s1.matrix() * w1 + s2.matrix() * w2))
}

pub fn sample_mean(sample: &Sample) -> DVector<f64> {
    sample.data().row_mean().transpose()
}

/// Pooled maximum-likelihood covariance `(n1·Σ̂1 + n2·Σ̂2) / n`, each class
/// centered at its own sample mean.
pub fn pooled_sample_covariance(s1: &Sample, s2: &Sample) -> Result<DMatrix<f64>> {
    if s1.p() != s2.p() {
        return Err(Error::DimensionMismatch {
            expected: s1.p(),
            found: s2.p(),
        });
    }
    let n = s1.n() + s2.n();
    if n < 3 {
        return Err(Error::invalid(
            "pooled covariance needs at least three observations",
        ));
    }
    let scatter = |s: &Sample| {
        let mut c = s.data().clone();
        let mean = s.data().row_mean();
        for mut row in c.row_iter_mut() {
            row -= &mean;
        }
        c.tr_mul(&c)
    };
    let mut cov = (scatter(s1) + scatter(s2)) / n as f64;
    symmetrize(&mut cov);
    Ok(cov)
}

/// `S + ρI`.
pub fn ridge_stabilize(s: &DMatrix<f64>, rho: f64) -> DMatrix<f64> {
    let mut out = s.clone();
    for i in 0..out.nrows().min(out.ncols()) {
        out[(i, i)] += rho;
    }
    out
}

/// `√(ln p / n)`.
pub fn default_ridge(p: usize, n: usize) -> f64 {
    ((p as f64).ln() / n as f64).sqrt()
}

fn symmetrize(m: &mut DMatrix<f64>) {
    let k = m.nrows();
    for i in 0..k {
        for j in (i + 1)..k {
            let v = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }
}
