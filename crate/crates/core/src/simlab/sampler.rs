use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::robust::Sample;

/// Weight of the unit-scale component in the two-scale normal mixture.
pub const MIXTURE_KAPPA: f64 = 0.8;

/// Elliptical laws, all generated as `μ + R·Lz` with `L` the Cholesky factor
/// of the scatter matrix, `z` standard normal and `R` an independent radial
/// multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EllipticalLaw {
    Normal,
    /// Multivariate t with two degrees of freedom, divided by √2.
    #[serde(alias = "t2_standardized")]
    T2,
    /// `κN(0,Σ) + (1−κ)N(0,9Σ)`, divided by `√(κ + 9(1−κ))`.
    #[serde(alias = "mixture")]
    MixtureNormal,
    /// Multivariate t with one degree of freedom.
    Cauchy,
}

impl EllipticalLaw {
    pub fn label(self) -> &'static str {
        match self {
            EllipticalLaw::Normal => "normal",
            EllipticalLaw::T2 => "t2",
            EllipticalLaw::MixtureNormal => "mixture_normal",
            EllipticalLaw::Cauchy => "cauchy",
        }
    }

    /// Draws the radial multiplier `R`.
    pub fn radial_scale<R: Rng + ?Sized>(self, rng: &mut R) -> f64 {
        match self {
            EllipticalLaw::Normal => 1.0,
            // z / √(χ²₂/2) / √2 = z / √χ²₂
            EllipticalLaw::T2 => {
                let chi2: f64 = ChiSquared::new(2.0)
                    .expect("valid degrees of freedom")
                    .sample(rng);
                1.0 / chi2.sqrt()
            }
            EllipticalLaw::MixtureNormal => {
                let k = MIXTURE_KAPPA;
                let scale = if rng.random::<f64>() < k { 1.0 } else { 3.0 };
                scale / (k + 9.0 * (1.0 - k)).sqrt()
            }
            EllipticalLaw::Cauchy => {
                let w: f64 = StandardNormal.sample(rng);
                1.0 / w.abs()
            }
        }
    }
}

/// Sampler with the scatter factorisation done once.
#[derive(Debug, Clone)]
pub struct EllipticalSampler {
    law: EllipticalLaw,
    mu: DVector<f64>,
    factor: DMatrix<f64>,
}

impl EllipticalSampler {
    pub fn new(law: EllipticalLaw, mu: DVector<f64>, cov: &DMatrix<f64>) -> Result<Self> {
        if cov.nrows() != mu.len() || !cov.is_square() {
            return Err(Error::DimensionMismatch {
                expected: mu.len(),
                found: cov.nrows(),
            });
        }
        let factor = cov
            .clone()
            .cholesky()
            .ok_or(Error::NotPositiveDefinite)?
            .unpack();
        Ok(EllipticalSampler { law, mu, factor })
    }

    pub fn law(&self) -> EllipticalLaw {
        self.law
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> DVector<f64> {
        let p = self.mu.len();
        let z = DVector::<f64>::from_fn(p, |_, _| StandardNormal.sample(rng));
        let r = self.law.radial_scale(rng);
        let mut x = &self.factor * z;
        x *= r;
        x += &self.mu;
        x
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Sample> {
        if n == 0 {
            return Err(Error::invalid("sample size must be positive"));
        }
        let p = self.mu.len();
        let mut data = DMatrix::<f64>::zeros(n, p);
        for i in 0..n {
            data.set_row(i, &self.draw(rng).transpose());
        }
        Sample::new(data)
    }
}

/// One-shot sampler seeded from `seed`.
pub fn sample_elliptical(
    law: EllipticalLaw,
    n: usize,
    mu: &DVector<f64>,
    cov: &DMatrix<f64>,
    seed: u64,
) -> Result<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    EllipticalSampler::new(law, mu.clone(), cov)?.sample(n, &mut rng)
}
