//! Fully-intrinsic prior on `(η, θ)` and its Bayes factor.
//!
//! The imaginary sample is a triple `(x01, x△, x++)`. Its marginal under the
//! null, with the same `Beta(a△, a++ − a△)` prior on η as under the
//! alternative, is
//!
//! ```text
//! m0(x) = C(x△, x01) 2^{-x△} · C(x++, x△) · B(a△ + x△, a++ − a△ + x++ − x△) / B(a△, a++ − a△)
//! ```
//!
//! and the intrinsic prior is the `m0`-weighted mixture of the imaginary
//! posteriors `Beta(η | a△ + x△, ·) × Beta(θ | a01 + x01, a10 + x10)`. The
//! diagonal split (γ, x00) drops out entirely.

use serde::{Deserialize, Serialize};

use crate::ci::{BetaMixture, MixtureComponent};
use crate::default_test::conditional_log_bf;
use crate::error::Result;
use crate::grid::{composite_unit_rule, trapezoid, trapezoid_2d, validate_grid};
use crate::model::{ln_beta_kernel, BetaLaw, ContingencyTable, DirichletHyper, ImaginaryData};
use crate::special::{ln_pow2, log_beta, log_binomial, log_sum_exp};

/// Panels × order of the Gauss–Legendre rule used to integrate θ out.
const THETA_PANELS: usize = 16;
const THETA_ORDER: usize = 20;

fn lbeta(a: f64, b: f64) -> f64 {
    log_beta(a, b).expect("shapes are positive")
}

fn lbinom(n: u64, k: u64) -> f64 {
    log_binomial(n, k).expect("k <= n")
}

fn triangle_index(x01: u64, x_triangle: u64) -> usize {
    (x_triangle * (x_triangle + 1) / 2 + x01) as usize
}

/// Null-marginal log-weights `ln m0(x)` of every imaginary configuration
/// with `0 <= x01 <= x△ <= x++`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImaginaryWeightTable {
    x_plus_plus: u64,
    // row x△ holds x01 = 0..=x△
    log_weights: Vec<f64>,
}

impl ImaginaryWeightTable {
    pub fn x_plus_plus(&self) -> u64 {
        self.x_plus_plus
    }

    pub fn len(&self) -> usize {
        self.log_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_weights.is_empty()
    }

    pub fn get(&self, x01: u64, x_triangle: u64) -> Option<f64> {
        if x01 > x_triangle || x_triangle > self.x_plus_plus {
            return None;
        }
        self.log_weights.get(triangle_index(x01, x_triangle)).copied()
    }

    /// `(imaginary data, log-weight)` pairs, by increasing `x△` then `x01`.
    pub fn iter(&self) -> impl Iterator<Item = (ImaginaryData, f64)> + '_ {
        let xpp = self.x_plus_plus;
        (0..=xpp)
            .flat_map(move |xt| (0..=xt).map(move |x01| (x01, xt)))
            .zip(self.log_weights.iter().copied())
            .map(move |((x01, xt), w)| (ImaginaryData { x01, x_triangle: xt, x_plus_plus: Some(xpp) }, w))
    }

    /// `ln Σ m0(x)`; zero up to rounding.
    pub fn log_total(&self) -> f64 {
        log_sum_exp(&self.log_weights).expect("table is non-empty")
    }
}

pub fn h0_weights(a: &DirichletHyper, x_plus_plus: u64) -> ImaginaryWeightTable {
    let (a_t, a_d) = (a.a_triangle(), a.a_diagonal());
    let base = lbeta(a_t, a_d);
    let mut log_weights = Vec::with_capacity(triangle_index(0, x_plus_plus + 1));
    for xt in 0..=x_plus_plus {
        let eta_part = lbinom(x_plus_plus, xt) + lbeta(a_t + xt as f64, a_d + (x_plus_plus - xt) as f64) - base;
        for x01 in 0..=xt {
            log_weights.push(lbinom(xt, x01) - ln_pow2(xt) + eta_part);
        }
    }
    ImaginaryWeightTable { x_plus_plus, log_weights }
}

/// The intrinsic prior `p^I(η, θ | H0)` for a given hyperparameter and
/// imaginary sample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntrinsicPrior {
    hyper: DirichletHyper,
    weights: ImaginaryWeightTable,
}

impl IntrinsicPrior {
    pub fn new(a: &DirichletHyper, x_plus_plus: u64) -> Self {
        Self { hyper: *a, weights: h0_weights(a, x_plus_plus) }
    }

    pub fn hyper(&self) -> &DirichletHyper {
        &self.hyper
    }

    pub fn x_plus_plus(&self) -> u64 {
        self.weights.x_plus_plus
    }

    pub fn weights(&self) -> &ImaginaryWeightTable {
        &self.weights
    }

    /// Imaginary posterior of η after `x△` swings.
    pub fn eta_law(&self, x_triangle: u64) -> BetaLaw {
        BetaLaw {
            alpha: self.hyper.a_triangle() + x_triangle as f64,
            beta: self.hyper.a_diagonal() + (self.x_plus_plus() - x_triangle) as f64,
        }
    }

    /// Imaginary posterior of θ after `x01` of `x△` swings went 0→1.
    pub fn theta_law(&self, x01: u64, x_triangle: u64) -> BetaLaw {
        BetaLaw { alpha: self.hyper.a01() + x01 as f64, beta: self.hyper.a10() + (x_triangle - x01) as f64 }
    }

    pub fn ln_density(&self, eta: f64, theta: f64) -> Result<f64> {
        let terms = self
            .weights
            .iter()
            .map(|(x, w)| {
                let el = self.eta_law(x.x_triangle);
                let tl = self.theta_law(x.x01, x.x_triangle);
                Ok(w + el.ln_norm()
                    + ln_beta_kernel(el.alpha, el.beta, eta)?
                    + tl.ln_norm()
                    + ln_beta_kernel(tl.alpha, tl.beta, theta)?)
            })
            .collect::<Result<Vec<_>>>()?;
        log_sum_exp(&terms)
    }

    pub fn density(&self, eta: f64, theta: f64) -> Result<f64> {
        self.ln_density(eta, theta).map(f64::exp)
    }

    // ln Beta(η_i | eta_law(x△)) for every grid point and x△.
    fn eta_table(&self, etas: &[f64]) -> Result<Vec<Vec<f64>>> {
        etas.iter()
            .map(|&eta| {
                (0..=self.x_plus_plus())
                    .map(|xt| {
                        let law = self.eta_law(xt);
                        Ok(law.ln_norm() + ln_beta_kernel(law.alpha, law.beta, eta)?)
                    })
                    .collect()
            })
            .collect()
    }

    // ln m0(x) + ln Beta(θ_j | theta_law(x)) for every grid point and component.
    fn theta_table(&self, thetas: &[f64]) -> Result<Vec<Vec<f64>>> {
        thetas
            .iter()
            .map(|&theta| {
                self.weights
                    .iter()
                    .map(|(x, w)| {
                        let law = self.theta_law(x.x01, x.x_triangle);
                        Ok(w + law.ln_norm() + ln_beta_kernel(law.alpha, law.beta, theta)?)
                    })
                    .collect()
            })
            .collect()
    }

    fn component_rows(&self) -> Vec<usize> {
        self.weights.iter().map(|(x, _)| x.x_triangle as usize).collect()
    }

    /// Tabulates the joint density on a tensor grid.
    pub fn evaluate_grid(&self, eta_grid: &[f64], theta_grid: &[f64]) -> Result<IntrinsicPriorGrid> {
        validate_grid(eta_grid, false)?;
        validate_grid(theta_grid, false)?;
        let eta_tab = self.eta_table(eta_grid)?;
        let theta_tab = self.theta_table(theta_grid)?;
        let rows = self.component_rows();
        let mut density = Vec::with_capacity(eta_grid.len() * theta_grid.len());
        for e in &eta_tab {
            for t in &theta_tab {
                let v: f64 = t.iter().zip(&rows).map(|(lt, &xt)| (lt + e[xt]).exp()).sum();
                density.push(v);
            }
        }
        Ok(IntrinsicPriorGrid {
            eta_grid: eta_grid.to_vec(),
            theta_grid: theta_grid.to_vec(),
            density,
            x_plus_plus: self.x_plus_plus(),
            hyper: self.hyper,
        })
    }

    /// η-marginal obtained by integrating θ out numerically (composite
    /// Gauss–Legendre on `(0, 1)`).
    pub fn eta_marginal(&self, eta_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
        validate_grid(eta_grid, false)?;
        let (nodes, qw) = composite_unit_rule(THETA_PANELS, THETA_ORDER);
        let theta_tab = self.theta_table(&nodes)?;
        // ∫ m0(x) Beta(θ | ·) dθ per component
        let mut integrated = vec![0.0; self.weights.len()];
        for (row, w) in theta_tab.iter().zip(&qw) {
            for (acc, lt) in integrated.iter_mut().zip(row) {
                *acc += w * lt.exp();
            }
        }
        let rows = self.component_rows();
        let eta_tab = self.eta_table(eta_grid)?;
        Ok(eta_grid
            .iter()
            .zip(&eta_tab)
            .map(|(&eta, e)| {
                let v = integrated.iter().zip(&rows).map(|(s, &xt)| s * e[xt].exp()).sum();
                (eta, v)
            })
            .collect())
    }

    /// Closed-form θ-marginal: each η factor integrates to one.
    pub fn theta_marginal(&self) -> BetaMixture {
        let components = self
            .weights
            .iter()
            .map(|(x, w)| MixtureComponent { log_weight: w, law: self.theta_law(x.x01, x.x_triangle) })
            .collect();
        BetaMixture::new(components).expect("intrinsic weights are normalised")
    }
}

/// Joint intrinsic prior density at a single point.
pub fn i_prior_density(a: &DirichletHyper, x_plus_plus: u64, eta: f64, theta: f64) -> Result<f64> {
    IntrinsicPrior::new(a, x_plus_plus).density(eta, theta)
}

pub fn i_prior_eta_marginal(a: &DirichletHyper, x_plus_plus: u64, eta_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    IntrinsicPrior::new(a, x_plus_plus).eta_marginal(eta_grid)
}

pub fn i_prior_theta_marginal(a: &DirichletHyper, x_plus_plus: u64) -> BetaMixture {
    IntrinsicPrior::new(a, x_plus_plus).theta_marginal()
}

/// Tabulated joint density, row-major over `eta_grid` × `theta_grid`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntrinsicPriorGrid {
    pub eta_grid: Vec<f64>,
    pub theta_grid: Vec<f64>,
    pub density: Vec<f64>,
    pub x_plus_plus: u64,
    pub hyper: DirichletHyper,
}

impl IntrinsicPriorGrid {
    pub fn at(&self, eta_index: usize, theta_index: usize) -> f64 {
        self.density[eta_index * self.theta_grid.len() + theta_index]
    }

    pub fn row(&self, eta_index: usize) -> &[f64] {
        let n = self.theta_grid.len();
        &self.density[eta_index * n..(eta_index + 1) * n]
    }

    /// 2-D trapezoid integral over the tabulated region.
    pub fn integral(&self) -> f64 {
        trapezoid_2d(&self.eta_grid, &self.theta_grid, &self.density)
    }

    /// Trapezoid marginal in η (θ summed out on the grid).
    pub fn eta_marginal(&self) -> Vec<f64> {
        (0..self.eta_grid.len()).map(|i| trapezoid(&self.theta_grid, self.row(i))).collect()
    }

    /// Trapezoid marginal in θ (η summed out on the grid).
    pub fn theta_marginal(&self) -> Vec<f64> {
        (0..self.theta_grid.len())
            .map(|j| {
                let col: Vec<f64> = (0..self.eta_grid.len()).map(|i| self.at(i, j)).collect();
                trapezoid(&self.eta_grid, &col)
            })
            .collect()
    }
}

/// `ln BF^I_{H,H0}(n)`: a trinomial-weighted double sum over `(x01, x10)`
/// of the product of the marginal Bayes factor for η and the conditional
/// Bayes factor for θ.
pub fn i_log_bf(n: &ContingencyTable, a: &DirichletHyper, x_plus_plus: u64) -> f64 {
    let (nt, nd) = (n.n_triangle(), n.n_diagonal());
    let (a_t, a_d) = (a.a_triangle(), a.a_diagonal());
    let eta_base = lbeta(a_t + nt as f64, a_d + nd as f64);
    let mut terms = Vec::with_capacity(triangle_index(0, x_plus_plus + 1));
    for xt in 0..=x_plus_plus {
        let xrest = x_plus_plus - xt;
        // (1/4)^{x△} (1/2)^{x++ − x△}
        let ln_cell = -ln_pow2(2 * xt) - ln_pow2(xrest);
        let bf_eta = ln_pow2(x_plus_plus) + lbeta(a_t + (xt + nt) as f64, a_d + (xrest + nd) as f64) - eta_base;
        for x01 in 0..=xt {
            let x10 = xt - x01;
            let trinomial = lbinom(x_plus_plus, xt) + lbinom(xt, x01);
            let bf_theta = conditional_log_bf(n.n01(), n.n10(), a.a01() + x01 as f64, a.a10() + x10 as f64);
            terms.push(trinomial + ln_cell + bf_eta + bf_theta);
        }
    }
    log_sum_exp(&terms).expect("at least one imaginary configuration")
}

/// The same Bayes factor via `Σ_x m0(x) · m_H(n | x) / m0(n)`, with every
/// marginal written out separately. Used as a cross-check of [`i_log_bf`].
pub fn i_log_bf_via_mixture_identity(n: &ContingencyTable, a: &DirichletHyper, x_plus_plus: u64) -> f64 {
    let (npp, nt, nd) = (n.n_plus_plus(), n.n_triangle(), n.n_diagonal());
    let (n01, n10) = (n.n01() as f64, n.n10() as f64);
    let (a_t, a_d) = (a.a_triangle(), a.a_diagonal());
    let ln_m0_n =
        lbinom(nt, n.n01()) - ln_pow2(nt) + lbinom(npp, nt) + lbeta(a_t + nt as f64, a_d + nd as f64) - lbeta(a_t, a_d);
    let weights = h0_weights(a, x_plus_plus);
    let terms: Vec<f64> = weights
        .iter()
        .map(|(x, ln_m0_x)| {
            let xt = x.x_triangle as f64;
            let xrest = (x_plus_plus - x.x_triangle) as f64;
            let alpha = a.a01() + x.x01 as f64;
            let beta = a.a10() + x.x10() as f64;
            let ln_m_n_given_x = lbinom(npp, nt) + lbeta(a_t + xt + nt as f64, a_d + xrest + nd as f64)
                - lbeta(a_t + xt, a_d + xrest)
                + lbinom(nt, n.n01())
                + lbeta(alpha + n01, beta + n10)
                - lbeta(alpha, beta);
            ln_m0_x + ln_m_n_given_x - ln_m0_n
        })
        .collect();
    log_sum_exp(&terms).expect("at least one imaginary configuration")
}
