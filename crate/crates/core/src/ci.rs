//! Conditionally-intrinsic prior and Bayes factor.
//!
//! Working only with the swing model `n01 | n△ ~ Bin(n△, θ)`, the intrinsic
//! prior with `x△` imaginary swings is a mixture of the imaginary posteriors
//! `Beta(a01 + x01, a10 + x△ − x01)`, weighted by the null marginal of the
//! imaginary data, `C(x△, x01) 2^{-x△}`.

use serde::{Deserialize, Serialize};

use crate::default_test::conditional_log_bf;
use crate::error::{Error, Result};
use crate::model::{ln_beta_kernel, BetaLaw, ContingencyTable, DirichletHyper};
use crate::special::{ln_pow2, log_binomial, log_sum_exp};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub log_weight: f64,
    pub law: BetaLaw,
}

/// Finite mixture of Beta densities with weights stored as logarithms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaMixture {
    components: Vec<MixtureComponent>,
}

impl BetaMixture {
    /// Builds a mixture; the weights must sum to one.
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyInput("BetaMixture::new"));
        }
        let weights: Vec<f64> = components.iter().map(|c| c.log_weight).collect();
        let total = log_sum_exp(&weights)?;
        if total.abs() > 1e-10 {
            return Err(Error::domain(format!("mixture weights sum to {}", total.exp())));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `ln Σ w_i` over the components; zero for a normalised mixture.
    pub fn log_total_weight(&self) -> f64 {
        let weights: Vec<f64> = self.components.iter().map(|c| c.log_weight).collect();
        log_sum_exp(&weights).expect("mixture is non-empty")
    }

    pub fn ln_density(&self, theta: f64) -> Result<f64> {
        let terms = self
            .components
            .iter()
            .map(|c| Ok(c.log_weight + c.law.ln_norm() + ln_beta_kernel(c.law.alpha, c.law.beta, theta)?))
            .collect::<Result<Vec<_>>>()?;
        log_sum_exp(&terms)
    }

    /// Mixture density at θ; a domain error where any component diverges.
    pub fn density(&self, theta: f64) -> Result<f64> {
        self.ln_density(theta).map(f64::exp)
    }

    pub fn mean(&self) -> f64 {
        self.components.iter().map(|c| c.log_weight.exp() * c.law.mean()).sum()
    }
}

/// The CI prior for θ with `x△` imaginary swings: `x△ + 1` Beta components.
pub fn ci_prior(a: &DirichletHyper, x_triangle: u64) -> BetaMixture {
    let components = (0..=x_triangle)
        .map(|x01| MixtureComponent {
            log_weight: log_binomial(x_triangle, x01).expect("x01 <= x△") - ln_pow2(x_triangle),
            law: BetaLaw { alpha: a.a01() + x01 as f64, beta: a.a10() + (x_triangle - x01) as f64 },
        })
        .collect();
    BetaMixture { components }
}

/// `Σ_{x01} w(x01) · BF^{Co}(n | x)` where `BF^{Co}(n | x)` is the default
/// conditional Bayes factor started from the imaginary posterior.
pub fn ci_log_bf(n: &ContingencyTable, a: &DirichletHyper, x_triangle: u64) -> f64 {
    let terms: Vec<f64> = (0..=x_triangle)
        .map(|x01| {
            let x10 = x_triangle - x01;
            let log_weight = log_binomial(x_triangle, x01).expect("x01 <= x△") - ln_pow2(x_triangle);
            log_weight + conditional_log_bf(n.n01(), n.n10(), a.a01() + x01 as f64, a.a10() + x10 as f64)
        })
        .collect();
    log_sum_exp(&terms).expect("at least one imaginary configuration")
}
