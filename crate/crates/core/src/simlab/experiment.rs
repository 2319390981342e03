//! Monte Carlo experiment runner.
//!
//! Replication `r` uses its own ChaCha stream seeded with `base_seed + r`, so
//! results do not depend on scheduling. Replications run in parallel and are
//! collected in index order before aggregation.

use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cov::{build_sigma, CovKind};
use super::oracle::fisher_oracle_error;
use super::sampler::{EllipticalLaw, EllipticalSampler};
use crate::classifier::{fit_cv, predict, Class, FitOptions, Flavor};
use crate::error::{Error, Result};
use crate::robust::Sample;

fn default_test_size() -> usize {
    200
}

fn default_methods() -> Vec<Flavor> {
    Flavor::ALL.to_vec()
}

fn default_folds() -> usize {
    10
}

fn default_grid_size() -> usize {
    20
}

fn default_oracle_draws() -> usize {
    100_000
}

/// One Monte Carlo study. Class 1 is centered at zero, class 2 at a vector
/// with `s0` leading ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub law: EllipticalLaw,
    pub cov: CovKind,
    pub p: usize,
    pub n1: usize,
    pub n2: usize,
    #[serde(default = "default_test_size")]
    pub n_test_per_class: usize,
    pub s0: usize,
    pub reps: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_methods")]
    pub methods: Vec<Flavor>,
    #[serde(default = "default_folds")]
    pub folds: usize,
    #[serde(default = "default_grid_size")]
    pub grid_size: usize,
    /// Overrides the default ridge `√(ln p / n)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ridge: Option<f64>,
    /// Monte Carlo draws per class for the Bayes error of non-normal laws.
    #[serde(default = "default_oracle_draws")]
    pub oracle_draws: usize,
}

impl ExperimentSpec {
    /// The standard design: `n1 = n2 = 200`, 200 test points per class,
    /// `s0 = 10`, 10-fold CV over 20 grid points, all three methods.
    pub fn standard(
        law: EllipticalLaw,
        cov: CovKind,
        p: usize,
        reps: usize,
        base_seed: u64,
    ) -> Self {
        ExperimentSpec {
            law,
            cov,
            p,
            n1: 200,
            n2: 200,
            n_test_per_class: default_test_size(),
            s0: 10,
            reps,
            base_seed,
            methods: default_methods(),
            folds: default_folds(),
            grid_size: default_grid_size(),
            ridge: None,
            oracle_draws: default_oracle_draws(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("p", self.p),
            ("n1", self.n1),
            ("n2", self.n2),
            ("n_test_per_class", self.n_test_per_class),
            ("reps", self.reps),
            ("oracle_draws", self.oracle_draws),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(Error::invalid(format!("field `{name}` must be positive")));
        }
        if self.s0 == 0 || self.s0 > self.p {
            return Err(Error::invalid(format!(
                "field `s0` must lie in 1..={} (got {})",
                self.p, self.s0
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid(
                "field `methods` must name at least one method",
            ));
        }
        if self.folds < 2 || self.folds > self.n1.min(self.n2) {
            return Err(Error::invalid(format!(
                "field `folds` must lie in 2..={} (got {})",
                self.n1.min(self.n2),
                self.folds
            )));
        }
        if self.grid_size < 2 {
            return Err(Error::invalid("field `grid_size` must be at least 2"));
        }
        if self.cov == CovKind::Explicit {
            return Err(Error::invalid(
                "field `cov` must be a named model (model1 or model2)",
            ));
        }
        if let Some(r) = self.ridge {
            if !(r >= 0.0) {
                return Err(Error::invalid("field `ridge` must be non-negative"));
            }
        }
        Ok(())
    }

    pub fn class_centers(&self) -> (DVector<f64>, DVector<f64>) {
        let mu1 = DVector::zeros(self.p);
        let mu2 = DVector::from_fn(self.p, |i, _| if i < self.s0 { 1.0 } else { 0.0 });
        (mu1, mu2)
    }

    pub fn fit_options(&self) -> FitOptions {
        FitOptions {
            ridge: self.ridge,
            ..FitOptions::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodResult {
    pub method: Flavor,
    /// Test misclassification rate in `[0, 1]`.
    pub error: Option<f64>,
    pub lambda: Option<f64>,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationResult {
    pub replication: usize,
    pub seed: u64,
    pub methods: Vec<MethodResult>,
}

impl ReplicationResult {
    pub fn error_of(&self, method: Flavor) -> Option<f64> {
        self.methods
            .iter()
            .find(|m| m.method == method)
            .and_then(|m| m.error)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSummary {
    pub method: Flavor,
    /// Mean test error in percent over completed replications.
    pub mean_error_pct: f64,
    /// Sample standard deviation (divisor `reps − 1`); `None` with fewer
    /// than two completed replications.
    pub sd_pct: Option<f64>,
    pub completed: usize,
    pub failed: usize,
}

impl MethodSummary {
    /// Standard error of the mean error, in percent.
    pub fn standard_error_pct(&self) -> Option<f64> {
        self.sd_pct.map(|sd| sd / (self.completed as f64).sqrt())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentOutcome {
    pub spec: ExperimentSpec,
    /// Bayes error of the Fisher rule with true parameters, in `[0, 1]`.
    pub bayes_error: f64,
    pub summaries: Vec<MethodSummary>,
    pub replications: Vec<ReplicationResult>,
}

impl ExperimentOutcome {
    pub fn summary(&self, method: Flavor) -> Option<&MethodSummary> {
        self.summaries.iter().find(|s| s.method == method)
    }

    /// Fraction of (replication, method) cells whose fit failed.
    pub fn failure_fraction(&self) -> f64 {
        let failed: usize = self.summaries.iter().map(|s| s.failed).sum();
        let total: usize = self.summaries.iter().map(|s| s.failed + s.completed).sum();
        if total == 0 {
            0.0
        } else {
            failed as f64 / total as f64
        }
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    spec.validate()?;
    let sigma = build_sigma(spec.cov, spec.p)?.matrix;
    let (mu1, mu2) = spec.class_centers();
    let bayes_error = fisher_oracle_error(
        &mu1,
        &mu2,
        &sigma,
        spec.law,
        spec.oracle_draws,
        spec.base_seed,
    )?;
    let sampler1 = EllipticalSampler::new(spec.law, mu1, &sigma)?;
    let sampler2 = EllipticalSampler::new(spec.law, mu2, &sigma)?;
    let opts = spec.fit_options();

    let replications: Vec<ReplicationResult> = (0..spec.reps)
        .into_par_iter()
        .map(|r| replicate(spec, r, &sampler1, &sampler2, &opts))
        .collect::<Result<_>>()?;

    let summaries = spec
        .methods
        .iter()
        .map(|&m| summarize(m, &replications))
        .collect();
    Ok(ExperimentOutcome {
        spec: spec.clone(),
        bayes_error,
        summaries,
        replications,
    })
}

fn replicate(
    spec: &ExperimentSpec,
    r: usize,
    sampler1: &EllipticalSampler,
    sampler2: &EllipticalSampler,
    opts: &FitOptions,
) -> Result<ReplicationResult> {
    let seed = spec.base_seed.wrapping_add(r as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let train1 = sampler1.sample(spec.n1, &mut rng)?;
    let train2 = sampler2.sample(spec.n2, &mut rng)?;
    let test1 = sampler1.sample(spec.n_test_per_class, &mut rng)?;
    let test2 = sampler2.sample(spec.n_test_per_class, &mut rng)?;

    let methods = spec
        .methods
        .iter()
        .map(|&method| {
            match fit_cv(
                &train1,
                &train2,
                method,
                spec.folds,
                spec.grid_size,
                seed,
                opts,
            ) {
                Ok((model, _)) => MethodResult {
                    method,
                    error: Some(test_error(&model, &test1, &test2)),
                    lambda: Some(model.lambda),
                    failure: None,
                },
                Err(e) => MethodResult {
                    method,
                    error: None,
                    lambda: None,
                    failure: Some(e.to_string()),
                },
            }
        })
        .collect();
    Ok(ReplicationResult {
        replication: r,
        seed,
        methods,
    })
}

/// Misclassification rate over both test samples pooled.
pub fn test_error(
    model: &crate::classifier::DiscriminantModel,
    test1: &Sample,
    test2: &Sample,
) -> f64 {
    let wrong1 = model
        .predict_rows(test1.data())
        .into_iter()
        .filter(|c| *c != Class::First)
        .count();
    let wrong2 = (0..test2.n())
        .filter(|&i| predict(model, &test2.row(i)) != Class::Second)
        .count();
    (wrong1 + wrong2) as f64 / (test1.n() + test2.n()) as f64
}

fn summarize(method: Flavor, reps: &[ReplicationResult]) -> MethodSummary {
    let errors: Vec<f64> = reps
        .iter()
        .filter_map(|r| r.error_of(method))
        .map(|e| 100.0 * e)
        .collect();
    let completed = errors.len();
    let failed = reps.len() - completed;
    let mean = if completed == 0 {
        f64::NAN
    } else {
        errors.iter().sum::<f64>() / completed as f64
    };
    let sd_pct = (completed >= 2).then(|| {
        let ss: f64 = errors.iter().map(|e| (e - mean).powi(2)).sum();
        (ss / (completed - 1) as f64).sqrt()
    });
    MethodSummary {
        method,
        mean_error_pct: mean,
        sd_pct,
        completed,
        failed,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub s0: usize,
    pub method: Flavor,
    pub mean_error_pct: f64,
    pub sd_pct: Option<f64>,
    pub completed: usize,
    pub failed: usize,
    pub bayes_error_pct: f64,
}

/// Runs `base` once per value of `s0`, returning one row per (s0, method).
pub fn sparsity_sweep(base: &ExperimentSpec, s0_values: &[usize]) -> Result<Vec<SweepRow>> {
    if s0_values.is_empty() {
        return Err(Error::invalid("s0 list is empty"));
    }
    for &s0 in s0_values {
        ExperimentSpec { s0, ..base.clone() }.validate()?;
    }
    let mut rows = Vec::new();
    for &s0 in s0_values {
        let outcome = run_experiment(&ExperimentSpec { s0, ..base.clone() })?;
        rows.extend(outcome.summaries.iter().map(|s| SweepRow {
            s0,
            method: s.method,
            mean_error_pct: s.mean_error_pct,
            sd_pct: s.sd_pct,
            completed: s.completed,
            failed: s.failed,
            bayes_error_pct: 100.0 * outcome.bayes_error,
        }));
    }
    Ok(rows)
}
