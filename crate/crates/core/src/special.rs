//! Special functions and log-space helpers.
//!
//! Everything downstream works with logarithms of positive quantities;
//! exponentiation happens only when a probability is reported.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `0.5 * ln(2π)`
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Below this the recurrence `Γ(z+1) = zΓ(z)` shifts the argument up
/// before the asymptotic series is applied.
const STIRLING_MIN: f64 = 10.0;

/// Stirling series coefficients `B_2k / (2k (2k-1))`, k = 1..=7.
const STIRLING: [f64; 7] =
    [1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0, 1.0 / 1188.0, -691.0 / 360_360.0, 1.0 / 156.0];

/// Natural logarithm of a positive quantity. Zero is `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LogValue(pub f64);

impl LogValue {
    pub const ZERO: LogValue = LogValue(f64::NEG_INFINITY);
    pub const ONE: LogValue = LogValue(0.0);

    pub fn from_value(x: f64) -> Result<Self> {
        if x < 0.0 || x.is_nan() {
            return Err(Error::domain(format!("cannot take log of {x}")));
        }
        Ok(LogValue(x.ln()))
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    pub fn exp(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

/// `ln Γ(z)` for `z > 0`.
///
/// Asymptotic Stirling series for `z >= 10`, with upward recurrence for
/// smaller arguments. Absolute error is a few ulps of the result.
pub fn log_gamma(z: f64) -> Result<f64> {
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::domain(format!("log_gamma requires z > 0, got {z}")));
    }
    if z == 1.0 || z == 2.0 {
        return Ok(0.0);
    }
    let mut shifted = z;
    let mut product = 1.0;
    while shifted < STIRLING_MIN {
        product *= shifted;
        shifted += 1.0;
    }
    Ok(stirling(shifted) - product.ln())
}

fn stirling(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut power = inv;
    for c in STIRLING {
        series += c * power;
        power *= inv2;
    }
    (z - 0.5) * z.ln() - z + HALF_LN_2PI + series
}

/// `ln B(a, b)`.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::domain(format!("log_beta requires positive arguments, got ({a}, {b})")));
    }
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// `ln C(n, k)`.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return Err(Error::domain(format!("log_binomial requires k <= n, got ({n}, {k})")));
    }
    if k == 0 || k == n {
        return Ok(0.0);
    }
    let small = k.min(n - k) as f64;
    let large = k.max(n - k) as f64;
    let n = n as f64;
    Ok(log_gamma(n + 1.0)? - log_gamma(small + 1.0)? - log_gamma(large + 1.0)?)
}

/// `ln Σ exp(t_i)`, shifted by the maximum term.
///
/// Terms equal to `-inf` contribute nothing; if every term is `-inf` the
/// result is `-inf`.
pub fn log_sum_exp(terms: &[f64]) -> Result<f64> {
    if terms.is_empty() {
        return Err(Error::EmptyInput("log_sum_exp"));
    }
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Ok(max);
    }
    if max == f64::INFINITY {
        return Ok(max);
    }
    let sum: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    Ok(max + sum.ln())
}

/// `ln(p^k)` with the convention `0 ln 0 = 0`.
fn xlogy(k: f64, p: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k * p.ln()
    }
}

/// Binomial log-pmf `ln Bin(k | n, p)`.
///
/// Boundary probabilities are accepted; `p = 0` with `k > 0` (or `p = 1`
/// with `k < n`) gives `-inf`.
pub fn binomial_log_pmf(k: u64, n: u64, p: f64) -> Result<f64> {
    if k > n {
        return Err(Error::domain(format!("binomial pmf requires k <= n, got ({k}, {n})")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("probability out of range: {p}")));
    }
    let kf = k as f64;
    let rest = (n - k) as f64;
    Ok(log_binomial(n, k)? + (xlogy(kf, p) + xlogy(rest, 1.0 - p)))
}

/// `erfc(x)`: power series below 2, continued fraction above.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

// erf(x) = 2/√π e^{-x²} Σ 2^n x^{2n+1} / (2n+1)!!  (all terms positive)
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if term <= sum * f64::EPSILON * 0.25 {
            break;
        }
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

// erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz.
fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 * 0.5;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

/// Upper tail of the chi-square distribution with one degree of freedom.
pub fn chi_square_sf_1df(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("chi-square statistic must be >= 0, got {x}")));
    }
    Ok(erfc((x * 0.5).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailSide {
    /// `P(X <= k)`
    Lower,
    /// `P(X >= k)`
    Upper,
}

/// Exact Binomial tail probability, summed in log space.
pub fn binomial_tail(n: u64, k: u64, p: f64, side: TailSide) -> Result<f64> {
    if k > n {
        return Err(Error::domain(format!("binomial tail requires k <= n, got ({n}, {k})")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("probability out of range: {p}")));
    }
    let range = match side {
        TailSide::Lower => 0..=k,
        TailSide::Upper => k..=n,
    };
    let terms = range.map(|j| binomial_log_pmf(j, n, p)).collect::<Result<Vec<_>>>()?;
    Ok(log_sum_exp(&terms)?.exp().min(1.0))
}

/// `n ln 2`
pub(crate) fn ln_pow2(n: u64) -> f64 {
    n as f64 * LN_2
}
