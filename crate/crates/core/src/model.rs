//! Tables, priors and the sampling model.
//!
//! The quadrinomial law of a 2×2 table factorises, in the parametrisation
//! `η = π01 + π10`, `θ = π01 / η`, `γ = π00 / (π00 + π11)`, as
//!
//! ```text
//! f(n | η, θ, γ) = Bin(n△ | n++, η) · Bin(n01 | n△, θ) · Bin(n00 | n++ − n△, γ)
//! ```
//!
//! and a Dirichlet prior on the cells becomes three independent Beta laws.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::validate_grid;
use crate::special::{binomial_log_pmf, log_beta};

/// Observed 2×2 matched-pairs counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct ContingencyTable {
    n00: u64,
    n01: u64,
    n10: u64,
    n11: u64,
}

#[derive(Deserialize)]
struct RawTable {
    n00: u64,
    n01: u64,
    n10: u64,
    n11: u64,
}

impl TryFrom<RawTable> for ContingencyTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        ContingencyTable::new(raw.n00, raw.n01, raw.n10, raw.n11)
    }
}

impl ContingencyTable {
    pub fn new(n00: u64, n01: u64, n10: u64, n11: u64) -> Result<Self> {
        if n00 + n01 + n10 + n11 == 0 {
            return Err(Error::InvalidTable("table must contain at least one observation".into()));
        }
        Ok(Self { n00, n01, n10, n11 })
    }

    pub fn n00(&self) -> u64 {
        self.n00
    }

    pub fn n01(&self) -> u64 {
        self.n01
    }

    pub fn n10(&self) -> u64 {
        self.n10
    }

    pub fn n11(&self) -> u64 {
        self.n11
    }

    /// Number of swings, `n01 + n10`.
    pub fn n_triangle(&self) -> u64 {
        self.n01 + self.n10
    }

    pub fn n_plus_plus(&self) -> u64 {
        self.n00 + self.n01 + self.n10 + self.n11
    }

    /// Counts on the diagonal, `n00 + n11`.
    pub fn n_diagonal(&self) -> u64 {
        self.n00 + self.n11
    }
}

/// Dirichlet hyperparameters `a = (a00, a01, a10, a11)`, all positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHyper")]
pub struct DirichletHyper {
    a00: f64,
    a01: f64,
    a10: f64,
    a11: f64,
}

#[derive(Deserialize)]
struct RawHyper {
    #[serde(default = "one")]
    a00: f64,
    #[serde(default = "one")]
    a01: f64,
    #[serde(default = "one")]
    a10: f64,
    #[serde(default = "one")]
    a11: f64,
}

fn one() -> f64 {
    1.0
}

impl TryFrom<RawHyper> for DirichletHyper {
    type Error = Error;

    fn try_from(raw: RawHyper) -> Result<Self> {
        DirichletHyper::new(raw.a00, raw.a01, raw.a10, raw.a11)
    }
}

impl Default for DirichletHyper {
    fn default() -> Self {
        Self::uniform()
    }
}

impl DirichletHyper {
    pub fn new(a00: f64, a01: f64, a10: f64, a11: f64) -> Result<Self> {
        for (name, v) in [("a00", a00), ("a01", a01), ("a10", a10), ("a11", a11)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidHyper(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { a00, a01, a10, a11 })
    }

    /// The uniform Dirichlet, `a = (1, 1, 1, 1)`.
    pub fn uniform() -> Self {
        Self { a00: 1.0, a01: 1.0, a10: 1.0, a11: 1.0 }
    }

    pub fn a00(&self) -> f64 {
        self.a00
    }

    pub fn a01(&self) -> f64 {
        self.a01
    }

    pub fn a10(&self) -> f64 {
        self.a10
    }

    pub fn a11(&self) -> f64 {
        self.a11
    }

    pub fn a_triangle(&self) -> f64 {
        self.a01 + self.a10
    }

    pub fn a_plus_plus(&self) -> f64 {
        self.a00 + self.a01 + self.a10 + self.a11
    }

    /// `a++ − a△`, the second shape of the η law.
    pub fn a_diagonal(&self) -> f64 {
        self.a00 + self.a11
    }
}

/// A Beta law with positive shapes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaLaw {
    pub alpha: f64,
    pub beta: f64,
}

impl BetaLaw {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && beta > 0.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::domain(format!("Beta shapes must be positive, got ({alpha}, {beta})")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn mean(&self) -> f64 {
        self.alpha / (self.alpha + self.beta)
    }

    pub fn variance(&self) -> f64 {
        let s = self.alpha + self.beta;
        self.alpha * self.beta / (s * s * (s + 1.0))
    }

    /// `-ln B(α, β)`
    pub fn ln_norm(&self) -> f64 {
        -log_beta(self.alpha, self.beta).expect("shapes validated at construction")
    }

    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        Ok(ln_beta_kernel(self.alpha, self.beta, x)? + self.ln_norm())
    }

    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.ln_pdf(x).map(f64::exp)
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == self.beta
    }
}

/// `(α−1) ln x + (β−1) ln(1−x)`, with `0 ln 0 = 0` and a domain error where
/// the kernel diverges.
pub(crate) fn ln_beta_kernel(alpha: f64, beta: f64, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("Beta density evaluated outside [0, 1] at {x}")));
    }
    let part = |shape: f64, t: f64| -> Result<f64> {
        if t > 0.0 {
            Ok((shape - 1.0) * t.ln())
        } else if shape > 1.0 {
            Ok(f64::NEG_INFINITY)
        } else if shape == 1.0 {
            Ok(0.0)
        } else {
            Err(Error::domain(format!("Beta density diverges at {x} (shape {shape})")))
        }
    };
    Ok(part(alpha, x)? + part(beta, 1.0 - x)?)
}

/// The three independent Beta laws induced on `(η, θ, γ)` by a Dirichlet
/// prior on the cell probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReparamPrior {
    pub eta: BetaLaw,
    pub theta: BetaLaw,
    pub gamma: BetaLaw,
}

impl ReparamPrior {
    /// Joint log-density; the three factors are independent.
    pub fn ln_density(&self, eta: f64, theta: f64, gamma: f64) -> Result<f64> {
        Ok(self.eta.ln_pdf(eta)? + self.theta.ln_pdf(theta)? + self.gamma.ln_pdf(gamma)?)
    }
}

/// `η ~ Beta(a01 + a10, a00 + a11)`, `θ ~ Beta(a01, a10)`, `γ ~ Beta(a00, a11)`.
pub fn reparametrize(a: &DirichletHyper) -> ReparamPrior {
    ReparamPrior {
        eta: BetaLaw { alpha: a.a_triangle(), beta: a.a_diagonal() },
        theta: BetaLaw { alpha: a.a01, beta: a.a10 },
        gamma: BetaLaw { alpha: a.a00, beta: a.a11 },
    }
}

/// An imaginary sample: `x01` swings 0→1 out of `x△` swings, and (for the
/// full model) `x++` observations overall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ImaginaryData {
    pub x01: u64,
    pub x_triangle: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_plus_plus: Option<u64>,
}

impl ImaginaryData {
    pub fn conditional(x01: u64, x_triangle: u64) -> Result<Self> {
        if x01 > x_triangle {
            return Err(Error::InvalidImaginary(format!("x01 = {x01} exceeds x△ = {x_triangle}")));
        }
        Ok(Self { x01, x_triangle, x_plus_plus: None })
    }

    pub fn full(x01: u64, x_triangle: u64, x_plus_plus: u64) -> Result<Self> {
        if x01 > x_triangle || x_triangle > x_plus_plus {
            return Err(Error::InvalidImaginary(format!(
                "need x01 <= x△ <= x++, got ({x01}, {x_triangle}, {x_plus_plus})"
            )));
        }
        Ok(Self { x01, x_triangle, x_plus_plus: Some(x_plus_plus) })
    }

    pub fn x10(&self) -> u64 {
        self.x_triangle - self.x01
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("{name} must lie in [0, 1], got {p}")));
    }
    Ok(())
}

/// `ln f(n | η, θ, γ)`, the sum of the three Binomial log-pmfs.
///
/// Boundary parameter values are allowed only when the matching counts are
/// zero; otherwise the table has probability zero and a domain error is
/// returned.
pub fn log_likelihood_full(n: &ContingencyTable, eta: f64, theta: f64, gamma: f64) -> Result<f64> {
    check_probability("eta", eta)?;
    check_probability("theta", theta)?;
    check_probability("gamma", gamma)?;
    let nt = n.n_triangle();
    let ll = binomial_log_pmf(nt, n.n_plus_plus(), eta)?
        + binomial_log_pmf(n.n01, nt, theta)?
        + binomial_log_pmf(n.n00, n.n_diagonal(), gamma)?;
    if ll == f64::NEG_INFINITY {
        return Err(Error::domain(format!(
            "table has zero probability at (eta, theta, gamma) = ({eta}, {theta}, {gamma})"
        )));
    }
    Ok(ll)
}

/// `ln Bin(n01 | n△, θ)`; `-inf` when θ is at a boundary that the counts
/// rule out.
pub fn log_conditional_likelihood(n01: u64, n_triangle: u64, theta: f64) -> Result<f64> {
    check_probability("theta", theta)?;
    binomial_log_pmf(n01, n_triangle, theta)
}

/// The conditional likelihood of θ, normalised to a density on `(0, 1)`.
///
/// `∫ Bin(n01 | n△, θ) dθ = 1 / (n△ + 1)`, so the normalised curve is the
/// `Beta(n01 + 1, n10 + 1)` density. With no swings it is uniform.
pub fn normalized_likelihood_curve(n: &ContingencyTable, grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    validate_grid(grid, true)?;
    let nt = n.n_triangle();
    let ln_norm = ((nt + 1) as f64).ln();
    grid.iter()
        .map(|&theta| {
            let ll = log_conditional_likelihood(n.n01, nt, theta)?;
            Ok((theta, (ll + ln_norm).exp()))
        })
        .collect()
}
