//! Lasso by cyclic coordinate descent, backing the least-squares LDA baseline.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LassoOptions {
    /// Stop when the largest coordinate change in a sweep is below this.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for LassoOptions {
    fn default() -> Self {
        LassoOptions {
            tol: 1e-9,
            max_sweeps: 100_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LassoFit {
    pub beta: DVector<f64>,
    pub sweeps: usize,
    pub converged: bool,
}

/// Minimises `(1/(2n))‖y − Xβ‖² + λ‖β‖₁`.
pub fn lasso_direction(
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    lambda: f64,
    opts: &LassoOptions,
) -> Result<LassoFit> {
    check(x, y, std::slice::from_ref(&lambda))?;
    let gram = Gram::new(x, y);
    Ok(gram.descend(lambda, opts, DVector::zeros(x.ncols())))
}

/// Lasso fits for every `λ` in `lambdas`, returned in that order. The path
/// is walked from the largest `λ` down, each fit starting from the last.
pub fn lasso_path(
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    lambdas: &[f64],
    opts: &LassoOptions,
) -> Result<Vec<LassoFit>> {
    check(x, y, lambdas)?;
    let gram = Gram::new(x, y);
    let mut order: Vec<usize> = (0..lambdas.len()).collect();
    order.sort_by(|&i, &j| lambdas[j].total_cmp(&lambdas[i]));
    let mut out: Vec<Option<LassoFit>> = vec![None; lambdas.len()];
    let mut start = DVector::zeros(x.ncols());
    for i in order {
        let fit = gram.descend(lambdas[i], opts, start);
        start = fit.beta.clone();
        out[i] = Some(fit);
    }
    Ok(out
        .into_iter()
        .map(|f| f.expect("every lambda is fitted"))
        .collect())
}

fn check(x: &DMatrix<f64>, y: &DVector<f64>, lambdas: &[f64]) -> Result<()> {
    if y.len() != x.nrows() {
        return Err(Error::DimensionMismatch {
            expected: x.nrows(),
            found: y.len(),
        });
    }
    if let Some(bad) = lambdas.iter().find(|l| !(**l >= 0.0)) {
        return Err(Error::invalid(format!(
            "lambda must be non-negative, got {bad}"
        )));
    }
    Ok(())
}

/// `XᵀX/n` and `Xᵀy/n`; coordinate updates then cost `O(p)` instead of `O(n)`.
struct Gram {
    xtx: DMatrix<f64>,
    xty: DVector<f64>,
}

impl Gram {
    fn new(x: &DMatrix<f64>, y: &DVector<f64>) -> Self {
        let nf = x.nrows() as f64;
        Gram {
            xtx: x.tr_mul(x) / nf,
            xty: x.tr_mul(y) / nf,
        }
    }

    /// Cyclic descent; after each full sweep, sweeps over the non-zero
    /// coordinates alone until they settle, then a full sweep confirms.
    fn descend(&self, lambda: f64, opts: &LassoOptions, mut beta: DVector<f64>) -> LassoFit {
        let p = beta.len();
        // c = Xᵀ(y − Xβ)/n
        let mut c = &self.xty - &self.xtx * &beta;
        let all: Vec<usize> = (0..p).collect();
        let mut sweeps = 0;
        while sweeps < opts.max_sweeps {
            sweeps += 1;
            if self.sweep(&all, lambda, &mut beta, &mut c) < opts.tol {
                return LassoFit {
                    beta,
                    sweeps,
                    converged: true,
                };
            }
            let active: Vec<usize> = (0..p).filter(|&j| beta[j] != 0.0).collect();
            while sweeps < opts.max_sweeps {
                sweeps += 1;
                if self.sweep(&active, lambda, &mut beta, &mut c) < opts.tol {
                    break;
                }
            }
        }
        LassoFit {
            beta,
            sweeps,
            converged: false,
        }
    }

    fn sweep(
        &self,
        coords: &[usize],
        lambda: f64,
        beta: &mut DVector<f64>,
        c: &mut DVector<f64>,
    ) -> f64 {
        let mut max_delta = 0.0f64;
        for &j in coords {
            let sq = self.xtx[(j, j)];
            if sq == 0.0 {
                continue;
            }
            let old = beta[j];
            let new = soft_threshold(c[j] + sq * old, lambda) / sq;
            let delta = new - old;
            if delta != 0.0 {
                c.axpy(-delta, &self.xtx.column(j), 1.0);
                beta[j] = new;
                max_delta = max_delta.max(delta.abs());
            }
        }
        max_delta
    }
}

/// Smallest `λ` at which the lasso solution is identically zero.
pub fn lambda_max(x: &DMatrix<f64>, y: &DVector<f64>) -> f64 {
    (x.tr_mul(y) / x.nrows() as f64).amax()
}

fn soft_threshold(z: f64, t: f64) -> f64 {
    if z > t {
        z - t
    } else if z < -t {
        z + t
    } else {
        0.0
    }
}

/// Lasso objective, exposed for diagnostics.
pub fn lasso_objective(
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    beta: &DVector<f64>,
    lambda: f64,
) -> f64 {
    let r = y - x * beta;
    r.norm_squared() / (2.0 * x.nrows() as f64) + lambda * beta.lp_norm(1)
}
