//! Bayes error of the Fisher rule and conditional error of a fitted rule.
//!
//! For an elliptical draw `x = μ + R·Lz` the score `(x − c)ᵀγ` equals
//! `(μ − c)ᵀγ + R·√(γᵀΣγ)·z₀` in distribution, with `z₀` a scalar standard
//! normal. Monte Carlo estimates draw this scalar score directly instead of
//! full p-dimensional points.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::distribution::{ContinuousCDF, Normal};

use super::sampler::EllipticalLaw;
use crate::classifier::DiscriminantModel;
use crate::error::{Error, Result};

/// `Δ = δᵀΣ⁻¹δ` with `δ = μ₁ − μ₂`.
pub fn signal_strength(mu1: &DVector<f64>, mu2: &DVector<f64>, cov: &DMatrix<f64>) -> Result<f64> {
    let delta = check(mu1, mu2, cov)?;
    let chol = cov.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
    Ok(delta.dot(&chol.solve(&delta)))
}

fn check(mu1: &DVector<f64>, mu2: &DVector<f64>, cov: &DMatrix<f64>) -> Result<DVector<f64>> {
    let p = mu1.len();
    if mu2.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: mu2.len(),
        });
    }
    if cov.nrows() != p || cov.ncols() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: cov.nrows(),
        });
    }
    Ok(mu1 - mu2)
}

/// Misclassification rate of the Fisher rule with true parameters, equal
/// priors. Closed form `Φ(−√Δ/2)` for the normal law, Monte Carlo with
/// `mc_draws` per class otherwise.
pub fn fisher_oracle_error(
    mu1: &DVector<f64>,
    mu2: &DVector<f64>,
    cov: &DMatrix<f64>,
    law: EllipticalLaw,
    mc_draws: usize,
    seed: u64,
) -> Result<f64> {
    let delta = check(mu1, mu2, cov)?;
    let chol = cov.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
    if delta.iter().all(|v| *v == 0.0) {
        return Ok(0.5);
    }
    let strength = delta.dot(&chol.solve(&delta));
    if law == EllipticalLaw::Normal {
        return Ok(standard_normal().cdf(-strength.sqrt() / 2.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    projected_error(
        strength / 2.0,
        -strength / 2.0,
        strength.sqrt(),
        law,
        mc_draws,
        &mut rng,
    )
}

/// Monte Carlo estimate of the conditional error of a fitted rule:
/// the equal-weight average of its error rates on fresh draws from each
/// class with the given true parameters.
pub fn conditional_error_rn(
    model: &DiscriminantModel,
    mu1: &DVector<f64>,
    mu2: &DVector<f64>,
    cov: &DMatrix<f64>,
    law: EllipticalLaw,
    mc_draws: usize,
    seed: u64,
) -> Result<f64> {
    check(mu1, mu2, cov)?;
    if model.p() != mu1.len() {
        return Err(Error::DimensionMismatch {
            expected: mu1.len(),
            found: model.p(),
        });
    }
    let midpoint = (&model.mu1 + &model.mu2) * 0.5;
    let gamma = &model.gamma;
    let offset1 = (mu1 - &midpoint).dot(gamma);
    let offset2 = (mu2 - &midpoint).dot(gamma);
    let spread = gamma.dot(&(cov * gamma)).max(0.0).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    projected_error(offset1, offset2, spread, law, mc_draws, &mut rng)
}

fn projected_error<R: Rng>(
    offset1: f64,
    offset2: f64,
    spread: f64,
    law: EllipticalLaw,
    draws: usize,
    rng: &mut R,
) -> Result<f64> {
    if draws == 0 {
        return Err(Error::invalid("Monte Carlo draw count must be positive"));
    }
    let mut score = |offset: f64| {
        let z: f64 = StandardNormal.sample(rng);
        offset + law.radial_scale(rng) * spread * z
    };
    let wrong1 = (0..draws).filter(|_| score(offset1) < 0.0).count();
    let wrong2 = (0..draws).filter(|_| score(offset2) >= 0.0).count();
    Ok(0.5 * (wrong1 + wrong2) as f64 / draws as f64)
}

fn standard_normal() -> Normal {
    Normal::standard()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::Flavor;
    use crate::simlab::{build_sigma, CovKind};

    #[test]
    fn identity_scatter_closed_form() {
        let p = 5;
        let mu1 = DVector::zeros(p);
        let mut mu2 = DVector::zeros(p);
        mu2[0] = 2.0;
        let r = fisher_oracle_error(
            &mu1,
            &mu2,
            &DMatrix::identity(p, p),
            EllipticalLaw::Normal,
            1,
            0,
        )
        .unwrap();
        assert!((r - 0.158_655_253_931_457_05).abs() < 1e-10, "{r}");
    }

    #[test]
    fn equal_means_give_half() {
        let cov = DMatrix::identity(3, 3);
        for law in [EllipticalLaw::Normal, EllipticalLaw::Cauchy] {
            assert_eq!(
                fisher_oracle_error(&DVector::zeros(3), &DVector::zeros(3), &cov, law, 10, 0)
                    .unwrap(),
                0.5
            );
        }
    }

    #[test]
    fn singular_scatter_is_an_error() {
        let cov = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        let mu2 = DVector::from_vec(vec![1.0, 0.0]);
        assert!(
            fisher_oracle_error(&DVector::zeros(2), &mu2, &cov, EllipticalLaw::Normal, 10, 0)
                .is_err()
        );
    }

    #[test]
    fn monte_carlo_normal_matches_closed_form() {
        let sigma = build_sigma(CovKind::Ar1, 6).unwrap().matrix;
        let mu1 = DVector::zeros(6);
        let mu2 = DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
        let exact = fisher_oracle_error(&mu1, &mu2, &sigma, EllipticalLaw::Normal, 0, 0).unwrap();
        let gamma = sigma.clone().cholesky().unwrap().solve(&(&mu1 - &mu2));
        let model = DiscriminantModel {
            flavor: Flavor::LdaClime,
            lambda: 0.0,
            gamma,
            mu1: mu1.clone(),
            mu2: mu2.clone(),
        };
        let mc = conditional_error_rn(
            &model,
            &mu1,
            &mu2,
            &sigma,
            EllipticalLaw::Normal,
            200_000,
            9,
        )
        .unwrap();
        // binomial standard error ≈ 0.0008
        assert!((mc - exact).abs() < 0.004, "{mc} vs {exact}");
    }

    #[test]
    fn cauchy_bayes_error_matches_projection_law() {
        // projections of a multivariate t₁ are standard Cauchy: R = 1/2 − atan(√Δ/2)/π
        let p = 4;
        let mu1 = DVector::zeros(p);
        let mu2 = DVector::from_element(p, 1.0);
        let r = fisher_oracle_error(
            &mu1,
            &mu2,
            &DMatrix::identity(p, p),
            EllipticalLaw::Cauchy,
            200_000,
            3,
        )
        .unwrap();
        let exact = 0.5 - (1.0f64).atan() / std::f64::consts::PI;
        assert!((r - exact).abs() < 0.005, "{r} vs {exact}");
    }
}
