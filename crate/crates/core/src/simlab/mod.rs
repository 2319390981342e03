//! Simulation lab: covariance models, elliptical samplers, Bayes and
//! conditional error estimates, and the Monte Carlo experiment runner.

mod cov;
mod experiment;
mod oracle;
mod sampler;

pub use cov::{build_sigma, CovKind, CovModel};
pub use experiment::{
    run_experiment, sparsity_sweep, ExperimentOutcome, ExperimentSpec, MethodSummary,
    ReplicationResult, SweepRow,
};
pub use oracle::{conditional_error_rn, fisher_oracle_error, signal_strength};
pub use sampler::{sample_elliptical, EllipticalLaw, EllipticalSampler, MIXTURE_KAPPA};
