//! Posterior probability of the null as the imaginary sample grows.
//!
//! The abscissa is the ratio `q` of imaginary to actual sample size:
//! `x△ / n△` for the CI prior and `x++ / n++` for the I prior. Intrinsic
//! priors exist only for integer sizes, so each `q` is mapped to
//! `round(q · denominator)` (half away from zero).

use std::collections::BTreeMap;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ci::ci_log_bf;
use crate::default_test::{posterior_null, Method};
use crate::error::{Error, Result};
use crate::intrinsic::i_log_bf;
use crate::model::{ContingencyTable, DirichletHyper};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensitivityPoint {
    pub q: f64,
    /// Imaginary sample size actually used (`x△` or `x++`).
    pub x: u64,
    pub log_bf: f64,
    pub posterior_prob_h0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityCurve {
    pub method: Method,
    pub points: Vec<SensitivityPoint>,
}

impl SensitivityCurve {
    pub fn probabilities(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.posterior_prob_h0).collect()
    }
}

/// `{0, 0.05, …, 1}`.
pub fn default_q_grid() -> Vec<f64> {
    (0..=20).map(|i| i as f64 / 20.0).collect()
}

fn validate_q_grid(q_grid: &[f64]) -> Result<()> {
    if q_grid.is_empty() {
        return Err(Error::InvalidGrid("q grid is empty".into()));
    }
    if let Some(q) = q_grid.iter().find(|q| !(0.0..=1.0).contains(*q)) {
        return Err(Error::InvalidGrid(format!("q = {q} outside [0, 1]")));
    }
    if q_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid("q grid must be strictly increasing".into()));
    }
    Ok(())
}

/// Imaginary sample size for ratio `q`.
pub fn prior_size_for(q: f64, denominator: u64) -> u64 {
    (q * denominator as f64).round() as u64
}

fn evaluate_sizes<F>(sizes: Vec<u64>, f: F) -> BTreeMap<u64, f64>
where
    F: Fn(u64) -> f64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    let iter = sizes.into_par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = sizes.into_iter();
    iter.map(|x| (x, f(x))).collect()
}

pub fn sensitivity_curve(
    n: &ContingencyTable,
    a: &DirichletHyper,
    method: Method,
    q_grid: &[f64],
) -> Result<SensitivityCurve> {
    validate_q_grid(q_grid)?;
    let denominator = match method {
        Method::CiIntrinsic => {
            if n.n_triangle() == 0 {
                return Err(Error::InvalidTable("CI sensitivity needs at least one swing (q = x△/n△)".into()));
            }
            n.n_triangle()
        }
        Method::IIntrinsic => n.n_plus_plus(),
        Method::Default => return Err(Error::Unsupported("sensitivity curves need an intrinsic method".into())),
    };
    let sizes: Vec<u64> = q_grid.iter().map(|&q| prior_size_for(q, denominator)).collect();
    let mut distinct = sizes.clone();
    distinct.dedup();
    let cache = evaluate_sizes(distinct, |x| match method {
        Method::CiIntrinsic => ci_log_bf(n, a, x),
        _ => i_log_bf(n, a, x),
    });
    let points = q_grid
        .iter()
        .zip(sizes)
        .map(|(&q, x)| {
            let log_bf = cache[&x];
            SensitivityPoint { q, x, log_bf, posterior_prob_h0: posterior_null(log_bf) }
        })
        .collect();
    Ok(SensitivityCurve { method, points })
}

/// How the diagonal count `n++ − n△` is split between `n00` and `n11`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagonalSplit {
    #[default]
    AllToN00,
    Even,
}

impl DiagonalSplit {
    fn split(self, diagonal: u64) -> (u64, u64) {
        match self {
            DiagonalSplit::AllToN00 => (diagonal, 0),
            DiagonalSplit::Even => (diagonal / 2, diagonal - diagonal / 2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NppPoint {
    pub n_plus_plus: u64,
    pub ci_log_bf: f64,
    pub ci_posterior_prob_h0: f64,
    pub i_log_bf: f64,
    pub i_posterior_prob_h0: f64,
}

/// CI and I posterior probabilities for fixed swings as `n++` varies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NppCurve {
    pub n01: u64,
    pub n10: u64,
    pub x_triangle: u64,
    pub x_plus_plus: u64,
    pub split: DiagonalSplit,
    pub points: Vec<NppPoint>,
}

pub fn npp_dependence_curve(
    n01: u64,
    n10: u64,
    x_plus_plus: u64,
    x_triangle: u64,
    a: &DirichletHyper,
    npp_grid: &[u64],
    split: DiagonalSplit,
) -> Result<NppCurve> {
    let nt = n01 + n10;
    if npp_grid.is_empty() {
        return Err(Error::InvalidGrid("n++ grid is empty".into()));
    }
    if let Some(bad) = npp_grid.iter().find(|&&npp| npp < nt) {
        return Err(Error::InvalidTable(format!("n++ = {bad} is smaller than n△ = {nt}")));
    }
    let tables = npp_grid
        .iter()
        .map(|&npp| {
            let (n00, n11) = split.split(npp - nt);
            ContingencyTable::new(n00, n01, n10, n11)
        })
        .collect::<Result<Vec<_>>>()?;
    let points = tables
        .iter()
        .map(|t| {
            let ci = ci_log_bf(t, a, x_triangle);
            let i = i_log_bf(t, a, x_plus_plus);
            NppPoint {
                n_plus_plus: t.n_plus_plus(),
                ci_log_bf: ci,
                ci_posterior_prob_h0: posterior_null(ci),
                i_log_bf: i,
                i_posterior_prob_h0: posterior_null(i),
            }
        })
        .collect();
    Ok(NppCurve { n01, n10, x_triangle, x_plus_plus, split, points })
}
