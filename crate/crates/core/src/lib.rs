//! Robust sparse linear discriminant analysis for heavy-tailed two-class data.
//!
//! The crate is organised around four layers:
//!
//! - [`robust`]: spatial median, spatial-sign covariance and the classical
//!   moment estimators used by the baselines.
//! - [`lp`] and [`lasso`]: the direction solvers. `lp` solves
//!   `min ‖γ‖₁ s.t. ‖Aγ − b‖_∞ ≤ λ` exactly with a dense revised dual simplex;
//!   `lasso` backs the least-squares baseline.
//! - [`classifier`] and [`metrics`]: fitting, cross-validated tuning,
//!   prediction and confusion-matrix metrics.
//! - [`simlab`]: elliptical samplers, covariance models, Bayes/conditional
//!   error computation and the Monte Carlo experiment runner.

pub mod classifier;
mod error;
pub mod lasso;
pub mod lp;
pub mod metrics;
pub mod robust;
pub mod simlab;

pub use classifier::{
    cross_validate_lambda, fit, fit_cv, predict, Class, CvOutcome, DiscriminantModel, FitOptions,
    Flavor, FoldAssignment, PreparedFit,
};
pub use error::{Error, Result};
pub use lasso::{lasso_direction, lasso_path, LassoFit, LassoOptions};
pub use lp::{
    default_lambda_grid, solve_constrained_l1, solve_constrained_l1_path, DirectionSolution,
    L1Program, LpStatus,
};
pub use metrics::{evaluate, MetricsReport};
pub use robust::{
    default_ridge, pooled_sample_covariance, pooled_sign_covariance, ridge_stabilize, sample_mean,
    sign_covariance, spatial_median, spatial_sign, LocationEstimate, Sample, SignCovariance,
    WeiszfeldConfig,
};
