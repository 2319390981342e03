//! Discriminant fitting, tuning and prediction.
//!
//! All three flavours share the rule "class 1 iff `(z − (μ₁+μ₂)/2)ᵀγ ≥ 0`";
//! they differ in how the centers and the direction are estimated.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lasso::{lambda_max, lasso_direction, lasso_path, LassoOptions};
use crate::lp::{
    default_lambda_grid, solve_constrained_l1_path, solve_constrained_l1_with, L1Program,
    LpOptions, LpStatus,
};
use crate::robust::{
    default_ridge, pooled_sample_covariance, pooled_sign_covariance, ridge_stabilize, sample_mean,
    sign_covariance, spatial_median, Sample, WeiszfeldConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    /// Spatial medians and pooled spatial-sign covariance.
    Sslda,
    /// Sample means and pooled sample covariance.
    LdaClime,
    /// Lasso on the least-squares class coding.
    LsLda,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Sslda, Flavor::LdaClime, Flavor::LsLda];

    pub fn as_str(self) -> &'static str {
        match self {
            Flavor::Sslda => "sslda",
            Flavor::LdaClime => "lda_clime",
            Flavor::LsLda => "ls_lda",
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "sslda" => Ok(Flavor::Sslda),
            "lda_clime" => Ok(Flavor::LdaClime),
            "ls_lda" => Ok(Flavor::LsLda),
            other => Err(Error::invalid(format!("unknown flavor '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Class {
    First,
    Second,
}

impl Class {
    pub fn code(self) -> u8 {
        match self {
            Class::First => 1,
            Class::Second => 2,
        }
    }
}

impl TryFrom<i64> for Class {
    type Error = Error;

    fn try_from(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Class::First),
            2 => Ok(Class::Second),
            other => Err(Error::invalid(format!(
                "class label must be 1 or 2, got {other}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FitOptions {
    /// Ridge added to the scatter matrix; `None` uses `√(ln p / n)`.
    pub ridge: Option<f64>,
    pub weiszfeld: WeiszfeldConfig,
    pub lp: LpOptions,
    pub lasso: LassoOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ModelDocument", try_from = "ModelDocument")]
pub struct DiscriminantModel {
    pub flavor: Flavor,
    pub lambda: f64,
    pub gamma: DVector<f64>,
    pub mu1: DVector<f64>,
    pub mu2: DVector<f64>,
}

/// Flat JSON layout of a fitted model.
#[derive(Serialize, Deserialize)]
struct ModelDocument {
    flavor: Flavor,
    lambda: f64,
    gamma: Vec<f64>,
    mu1: Vec<f64>,
    mu2: Vec<f64>,
    p: usize,
}

impl From<DiscriminantModel> for ModelDocument {
    fn from(m: DiscriminantModel) -> Self {
        ModelDocument {
            flavor: m.flavor,
            lambda: m.lambda,
            p: m.gamma.len(),
            gamma: m.gamma.as_slice().to_vec(),
            mu1: m.mu1.as_slice().to_vec(),
            mu2: m.mu2.as_slice().to_vec(),
        }
    }
}

impl TryFrom<ModelDocument> for DiscriminantModel {
    type Error = Error;

    fn try_from(d: ModelDocument) -> Result<Self> {
        for (name, v) in [("gamma", &d.gamma), ("mu1", &d.mu1), ("mu2", &d.mu2)] {
            if v.len() != d.p {
                return Err(Error::invalid(format!(
                    "{name} has length {} but p = {}",
                    v.len(),
                    d.p
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::invalid(format!("{name} has non-finite entries")));
            }
        }
        Ok(DiscriminantModel {
            flavor: d.flavor,
            lambda: d.lambda,
            gamma: DVector::from_vec(d.gamma),
            mu1: DVector::from_vec(d.mu1),
            mu2: DVector::from_vec(d.mu2),
        })
    }
}

impl DiscriminantModel {
    pub fn p(&self) -> usize {
        self.gamma.len()
    }

    /// `(z − (μ₁+μ₂)/2)ᵀγ`
    pub fn score(&self, z: &DVector<f64>) -> f64 {
        let mut s = 0.0;
        for j in 0..self.gamma.len() {
            s += (z[j] - 0.5 * (self.mu1[j] + self.mu2[j])) * self.gamma[j];
        }
        s
    }

    pub fn support_size(&self) -> usize {
        self.gamma.iter().filter(|v| **v != 0.0).count()
    }

    pub fn predict_rows(&self, data: &DMatrix<f64>) -> Vec<Class> {
        data.row_iter()
            .map(|r| predict(self, &r.transpose()))
            .collect()
    }
}

/// Class 1 when the score is non-negative, so exact ties go to class 1.
pub fn predict(model: &DiscriminantModel, z: &DVector<f64>) -> Class {
    if model.score(z) >= 0.0 {
        Class::First
    } else {
        Class::Second
    }
}

#[derive(Debug, Clone)]
enum Direction {
    /// `min ‖γ‖₁ s.t. ‖Aγ − b‖_∞ ≤ λ`
    Constrained {
        a: DMatrix<f64>,
        b: DVector<f64>,
    },
    Lasso {
        x: DMatrix<f64>,
        y: DVector<f64>,
    },
}

/// Everything about a fit that does not depend on `λ`.
#[derive(Debug, Clone)]
pub struct PreparedFit {
    flavor: Flavor,
    mu1: DVector<f64>,
    mu2: DVector<f64>,
    direction: Direction,
    opts: FitOptions,
}

impl PreparedFit {
    pub fn new(s1: &Sample, s2: &Sample, flavor: Flavor, opts: &FitOptions) -> Result<Self> {
        Self::build(s1, s2, flavor, opts).map_err(|e| Error::Fit {
            flavor,
            source: Box::new(e),
        })
    }

    fn build(s1: &Sample, s2: &Sample, flavor: Flavor, opts: &FitOptions) -> Result<Self> {
        let p = s1.p();
        if s2.p() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: s2.p(),
            });
        }
        let (n1, n2) = (s1.n(), s2.n());
        let n = n1 + n2;
        let rho = opts.ridge.unwrap_or_else(|| default_ridge(p, n));
        if !(rho >= 0.0) {
            return Err(Error::invalid(format!(
                "ridge must be non-negative, got {rho}"
            )));
        }

        let (mu1, mu2, direction) = match flavor {
            Flavor::Sslda => {
                let mu1 = spatial_median(s1, &opts.weiszfeld)?.center;
                let mu2 = spatial_median(s2, &opts.weiszfeld)?.center;
                let sc1 = sign_covariance(s1, &mu1)?;
                let sc2 = sign_covariance(s2, &mu2)?;
                let pooled = pooled_sign_covariance(&sc1, &sc2, n1, n2)?;
                // the ridge acts on the Σ scale, like the sample-covariance baseline
                let a = ridge_stabilize(&(pooled.matrix() * p as f64), rho);
                let b = &mu1 - &mu2;
                (mu1, mu2, Direction::Constrained { a, b })
            }
            Flavor::LdaClime => {
                let mu1 = sample_mean(s1);
                let mu2 = sample_mean(s2);
                let a = ridge_stabilize(&pooled_sample_covariance(s1, s2)?, rho);
                let b = &mu1 - &mu2;
                (mu1, mu2, Direction::Constrained { a, b })
            }
            Flavor::LsLda => {
                let mu1 = sample_mean(s1);
                let mu2 = sample_mean(s2);
                let mut x = DMatrix::<f64>::zeros(n, p);
                x.view_mut((0, 0), (n1, p)).copy_from(s1.data());
                x.view_mut((n1, 0), (n2, p)).copy_from(s2.data());
                let grand = x.row_mean();
                for mut row in x.row_iter_mut() {
                    row -= &grand;
                }
                let nf = n as f64;
                let y = DVector::from_fn(n, |i, _| {
                    if i < n1 {
                        n2 as f64 / nf
                    } else {
                        -(n1 as f64) / nf
                    }
                });
                (mu1, mu2, Direction::Lasso { x, y })
            }
        };
        if mu1 == mu2 {
            return Err(Error::Degenerate("class centers coincide".into()));
        }
        Ok(PreparedFit {
            flavor,
            mu1,
            mu2,
            direction,
            opts: *opts,
        })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    /// Vector whose sup-norm bounds the useful range of `λ`: the center
    /// difference for the constrained program, `Xᵀy/n` for the lasso.
    pub fn lambda_scale(&self) -> DVector<f64> {
        match &self.direction {
            Direction::Constrained { b, .. } => b.clone(),
            Direction::Lasso { x, y } => x.tr_mul(y) / x.nrows() as f64,
        }
    }

    pub fn lambda_grid(&self, count: usize) -> Result<Vec<f64>> {
        match &self.direction {
            Direction::Lasso { x, y } if lambda_max(x, y) == 0.0 => Err(Error::Degenerate(
                "least-squares coding is orthogonal to every feature".into(),
            )),
            _ => default_lambda_grid(&self.lambda_scale(), count),
        }
    }

    /// One model per `λ`, in the order given, warm-starting along the path.
    pub fn solve_path(&self, lambdas: &[f64]) -> Result<Vec<Result<DiscriminantModel>>> {
        let wrap = |e: Error| Error::Fit {
            flavor: self.flavor,
            source: Box::new(e),
        };
        let gammas: Vec<Result<DVector<f64>>> = match &self.direction {
            Direction::Constrained { a, b } => {
                solve_constrained_l1_path(a, b, lambdas, &self.opts.lp)
                    .map_err(wrap)?
                    .into_iter()
                    .zip(lambdas)
                    .map(|(sol, &lambda)| match sol {
                        Ok(sol) if sol.status == LpStatus::InfeasibleNumerically => {
                            Err(wrap(Error::Infeasible {
                                residual: sol.residual_inf,
                                lambda,
                            }))
                        }
                        Ok(sol) => Ok(sol.gamma),
                        Err(e) => Err(wrap(e)),
                    })
                    .collect()
            }
            Direction::Lasso { x, y } => lasso_path(x, y, lambdas, &self.opts.lasso)
                .map_err(wrap)?
                .into_iter()
                .map(|fit| Ok(fit.beta))
                .collect(),
        };
        Ok(gammas
            .into_iter()
            .zip(lambdas)
            .map(|(gamma, &lambda)| {
                Ok(DiscriminantModel {
                    flavor: self.flavor,
                    lambda,
                    gamma: gamma?,
                    mu1: self.mu1.clone(),
                    mu2: self.mu2.clone(),
                })
            })
            .collect())
    }

    pub fn solve(&self, lambda: f64) -> Result<DiscriminantModel> {
        let gamma = match &self.direction {
            Direction::Constrained { a, b } => {
                let prog =
                    L1Program::new(a.clone(), b.clone(), lambda).map_err(|e| Error::Fit {
                        flavor: self.flavor,
                        source: Box::new(e),
                    })?;
                let sol =
                    solve_constrained_l1_with(&prog, &self.opts.lp).map_err(|e| Error::Fit {
                        flavor: self.flavor,
                        source: Box::new(e),
                    })?;
                if sol.status == LpStatus::InfeasibleNumerically {
                    return Err(Error::Fit {
                        flavor: self.flavor,
                        source: Box::new(Error::Infeasible {
                            residual: sol.residual_inf,
                            lambda,
                        }),
                    });
                }
                sol.gamma
            }
            Direction::Lasso { x, y } => {
                lasso_direction(x, y, lambda, &self.opts.lasso)
                    .map_err(|e| Error::Fit {
                        flavor: self.flavor,
                        source: Box::new(e),
                    })?
                    .beta
            }
        };
        Ok(DiscriminantModel {
            flavor: self.flavor,
            lambda,
            gamma,
            mu1: self.mu1.clone(),
            mu2: self.mu2.clone(),
        })
    }
}

pub fn fit(
    s1: &Sample,
    s2: &Sample,
    lambda: f64,
    flavor: Flavor,
    opts: &FitOptions,
) -> Result<DiscriminantModel> {
    PreparedFit::new(s1, s2, flavor, opts)?.solve(lambda)
}

/// Stratified K-fold split: each class is shuffled with a seeded stream and
/// cut into K contiguous blocks whose sizes differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FoldAssignment {
    pub k: usize,
    pub class1_folds: Vec<Vec<usize>>,
    pub class2_folds: Vec<Vec<usize>>,
}

impl FoldAssignment {
    pub fn stratified(n1: usize, n2: usize, k: usize, seed: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid("cross-validation needs at least two folds"));
        }
        if n1 < k || n2 < k {
            return Err(Error::invalid(format!(
                "each class needs at least {k} rows for {k}-fold CV (got {n1} and {n2})"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut split = |n: usize| {
            let mut idx: Vec<usize> = (0..n).collect();
            idx.shuffle(&mut rng);
            let (base, extra) = (n / k, n % k);
            let mut out = Vec::with_capacity(k);
            let mut start = 0;
            for f in 0..k {
                let len = base + usize::from(f < extra);
                let mut block = idx[start..start + len].to_vec();
                block.sort_unstable();
                out.push(block);
                start += len;
            }
            out
        };
        let class1_folds = split(n1);
        let class2_folds = split(n2);
        Ok(FoldAssignment {
            k,
            class1_folds,
            class2_folds,
        })
    }

    /// Training and held-out row indices of one class for fold `f`.
    fn split(folds: &[Vec<usize>], n: usize, f: usize) -> (Vec<usize>, &[usize]) {
        let held = &folds[f];
        let train = (0..n).filter(|i| held.binary_search(i).is_err()).collect();
        (train, held)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvScore {
    pub lambda: f64,
    /// Held-out observations classified correctly, summed over folds.
    pub correct: usize,
    /// Folds in which the fit failed at this `λ` (they contribute zero).
    pub failed_folds: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvOutcome {
    pub lambda: f64,
    pub scores: Vec<CvScore>,
    pub folds: FoldAssignment,
}

/// Chooses `λ` by maximising the number of correctly classified held-out
/// observations; ties go to the largest `λ`.
///
/// Every fold refits centers and scatter on the retained rows. Folds are
/// evaluated in parallel and reduced in fold order.
pub fn cross_validate_lambda(
    s1: &Sample,
    s2: &Sample,
    grid: &[f64],
    k: usize,
    flavor: Flavor,
    seed: u64,
    opts: &FitOptions,
) -> Result<CvOutcome> {
    if grid.is_empty() {
        return Err(Error::invalid("lambda grid is empty"));
    }
    if s1.p() != s2.p() {
        return Err(Error::DimensionMismatch {
            expected: s1.p(),
            found: s2.p(),
        });
    }
    let folds = FoldAssignment::stratified(s1.n(), s2.n(), k, seed)?;

    let per_fold: Vec<Vec<Option<usize>>> = (0..k)
        .into_par_iter()
        .map(|f| {
            let (train1, held1) = FoldAssignment::split(&folds.class1_folds, s1.n(), f);
            let (train2, held2) = FoldAssignment::split(&folds.class2_folds, s2.n(), f);
            let Ok(prepared) = PreparedFit::new(
                &s1.select_rows(&train1),
                &s2.select_rows(&train2),
                flavor,
                opts,
            ) else {
                return vec![None; grid.len()];
            };
            let Ok(models) = prepared.solve_path(grid) else {
                return vec![None; grid.len()];
            };
            models
                .into_iter()
                .map(|model| {
                    let model = model.ok()?;
                    let c1 = held1
                        .iter()
                        .filter(|&&i| predict(&model, &s1.row(i)) == Class::First)
                        .count();
                    let c2 = held2
                        .iter()
                        .filter(|&&i| predict(&model, &s2.row(i)) == Class::Second)
                        .count();
                    Some(c1 + c2)
                })
                .collect()
        })
        .collect();

    let scores: Vec<CvScore> = grid
        .iter()
        .enumerate()
        .map(|(g, &lambda)| CvScore {
            lambda,
            correct: per_fold.iter().map(|f| f[g].unwrap_or(0)).sum(),
            failed_folds: per_fold.iter().filter(|f| f[g].is_none()).count(),
        })
        .collect();

    let best = scores
        .iter()
        .filter(|s| s.failed_folds < k)
        .max_by(|a, b| {
            a.correct
                .cmp(&b.correct)
                .then(a.lambda.total_cmp(&b.lambda))
        })
        .ok_or_else(|| Error::Fit {
            flavor,
            source: Box::new(Error::Degenerate(
                "every cross-validation fit failed".into(),
            )),
        })?;
    Ok(CvOutcome {
        lambda: best.lambda,
        scores,
        folds,
    })
}

/// Cross-validates over the default grid of `grid_size` points built from
/// the full training data, then refits on all of it at the chosen `λ`.
pub fn fit_cv(
    s1: &Sample,
    s2: &Sample,
    flavor: Flavor,
    folds: usize,
    grid_size: usize,
    seed: u64,
    opts: &FitOptions,
) -> Result<(DiscriminantModel, CvOutcome)> {
    let prepared = PreparedFit::new(s1, s2, flavor, opts)?;
    let grid = prepared.lambda_grid(grid_size)?;
    let cv = cross_validate_lambda(s1, s2, &grid, folds, flavor, seed, opts)?;
    let model = prepared.solve(cv.lambda)?;
    Ok((model, cv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn repeated(row: &[f64], n: usize) -> Sample {
        Sample::from_rows(&vec![row.to_vec(); n]).unwrap()
    }

    fn model() -> DiscriminantModel {
        DiscriminantModel {
            flavor: Flavor::Sslda,
            lambda: 0.1,
            gamma: DVector::from_vec(vec![1.0, 0.0]),
            mu1: DVector::from_vec(vec![2.0, 0.0]),
            mu2: DVector::from_vec(vec![-2.0, 0.0]),
        }
    }

    #[test]
    fn predict_examples() {
        let m = model();
        assert_eq!(
            predict(&m, &DVector::from_vec(vec![3.0, 0.0])),
            Class::First
        );
        assert_eq!(
            predict(&m, &DVector::from_vec(vec![-3.0, 0.0])),
            Class::Second
        );
        assert_eq!(
            predict(&m, &DVector::from_vec(vec![0.0, 7.0])),
            Class::First
        );
    }

    #[test]
    fn point_mass_classes_keep_exact_centers() {
        let c1 = [1.0, 2.0, -1.0];
        let c2 = [0.0, 2.5, 0.5];
        let (s1, s2) = (repeated(&c1, 4), repeated(&c2, 5));
        for flavor in Flavor::ALL {
            let m = fit(&s1, &s2, 0.5, flavor, &FitOptions::default()).unwrap();
            assert_eq!(m.mu1.as_slice(), &c1, "{flavor}");
            assert_eq!(m.mu2.as_slice(), &c2, "{flavor}");
            assert_eq!(m.flavor, flavor);
        }
    }

    #[test]
    fn identical_classes_are_degenerate() {
        let s = Sample::from_rows(&[
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
        ])
        .unwrap();
        for flavor in Flavor::ALL {
            let err = fit(&s, &s, 0.1, flavor, &FitOptions::default()).unwrap_err();
            assert!(err.to_string().contains("degenerate"), "{flavor}: {err}");
        }
    }

    #[test]
    fn dimension_mismatch_carries_flavor() {
        let s1 = repeated(&[1.0, 2.0], 3);
        let s2 = repeated(&[1.0], 3);
        let err = fit(&s1, &s2, 0.1, Flavor::LdaClime, &FitOptions::default()).unwrap_err();
        assert!(matches!(
            err,
            Error::Fit {
                flavor: Flavor::LdaClime,
                ..
            }
        ));
    }

    #[test]
    fn sslda_direction_solves_its_program() {
        let s1 = Sample::from_rows(&[
            vec![2.0, 0.1],
            vec![3.0, -0.2],
            vec![2.5, 0.4],
            vec![1.8, -0.1],
        ])
        .unwrap();
        let s2 = Sample::from_rows(&[
            vec![-2.0, 0.3],
            vec![-2.6, -0.1],
            vec![-1.9, 0.2],
            vec![-3.1, 0.0],
        ])
        .unwrap();
        let prepared = PreparedFit::new(&s1, &s2, Flavor::Sslda, &FitOptions::default()).unwrap();
        let grid = prepared.lambda_grid(5).unwrap();
        let m = prepared.solve(grid[1]).unwrap();
        assert!(m.gamma[0] > 0.0);
        for i in 0..4 {
            assert_eq!(predict(&m, &s1.row(i)), Class::First);
            assert_eq!(predict(&m, &s2.row(i)), Class::Second);
        }
    }

    #[test]
    fn model_json_layout() {
        let json = serde_json::to_value(model()).unwrap();
        assert_eq!(json["flavor"], "sslda");
        assert_eq!(json["p"], 2);
        assert_eq!(json["gamma"], serde_json::json!([1.0, 0.0]));
        let back: DiscriminantModel = serde_json::from_value(json).unwrap();
        assert_eq!(back, model());
        let bad = serde_json::json!({"flavor": "ls_lda", "lambda": 1.0, "gamma": [1.0], "mu1": [0.0, 1.0], "mu2": [1.0], "p": 1});
        assert!(serde_json::from_value::<DiscriminantModel>(bad).is_err());
    }

    #[test]
    fn flavor_names_parse() {
        assert_eq!("lda-clime".parse::<Flavor>().unwrap(), Flavor::LdaClime);
        assert_eq!("LS_LDA".parse::<Flavor>().unwrap(), Flavor::LsLda);
        assert!("coda".parse::<Flavor>().is_err());
    }

    #[test]
    fn folds_partition_each_class() {
        let f = FoldAssignment::stratified(23, 10, 4, 7).unwrap();
        for (folds, n) in [(&f.class1_folds, 23), (&f.class2_folds, 10)] {
            let mut all: Vec<usize> = folds.iter().flatten().copied().collect();
            all.sort_unstable();
            assert_eq!(all, (0..n).collect::<Vec<_>>());
            let sizes: Vec<usize> = folds.iter().map(Vec::len).collect();
            assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
        }
        assert_eq!(f, FoldAssignment::stratified(23, 10, 4, 7).unwrap());
        assert_ne!(f, FoldAssignment::stratified(23, 10, 4, 8).unwrap());
        assert!(FoldAssignment::stratified(3, 10, 4, 0).is_err());
        assert!(FoldAssignment::stratified(10, 10, 1, 0).is_err());
    }

    fn separated() -> (Sample, Sample) {
        let s1 = Sample::from_rows(
            &(0..12)
                .map(|i| vec![10.0 + 0.1 * i as f64, (i % 3) as f64 * 0.2])
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let s2 = Sample::from_rows(
            &(0..12)
                .map(|i| vec![-10.0 - 0.1 * i as f64, (i % 4) as f64 * 0.2])
                .collect::<Vec<_>>(),
        )
        .unwrap();
        (s1, s2)
    }

    #[test]
    fn cv_singleton_grid_returns_it() {
        let (s1, s2) = separated();
        let cv = cross_validate_lambda(
            &s1,
            &s2,
            &[0.37],
            3,
            Flavor::LdaClime,
            1,
            &FitOptions::default(),
        )
        .unwrap();
        assert_eq!(cv.lambda, 0.37);
    }

    #[test]
    fn cv_on_separable_classes_prefers_largest_lambda() {
        let (s1, s2) = separated();
        for flavor in [Flavor::Sslda, Flavor::LdaClime] {
            let prepared = PreparedFit::new(&s1, &s2, flavor, &FitOptions::default()).unwrap();
            let top = prepared.lambda_scale().amax();
            let grid = vec![0.1 * top, 0.3 * top, 0.6 * top, 0.9 * top];
            let cv = cross_validate_lambda(&s1, &s2, &grid, 4, flavor, 3, &FitOptions::default())
                .unwrap();
            assert!(
                cv.scores.iter().all(|s| s.correct == 24),
                "{flavor}: {:?}",
                cv.scores
            );
            assert_abs_diff_eq!(cv.lambda, 0.9 * top);
        }
    }

    #[test]
    fn cv_rejects_empty_grid() {
        let (s1, s2) = separated();
        assert!(
            cross_validate_lambda(&s1, &s2, &[], 3, Flavor::Sslda, 0, &FitOptions::default())
                .is_err()
        );
    }
}
