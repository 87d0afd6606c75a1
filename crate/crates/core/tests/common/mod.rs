//! Reference evaluations written straight from the definitions.
//!
//! Nothing here touches the crate's special functions or quadrature rules:
//! Beta functions with integer shapes are exact factorial ratios and every
//! integral goes through an adaptive Gauss–Kronrod rule.

#![allow(dead_code)]

use corrprop::ContingencyTable;

const TOL: f64 = 1e-13;
const MAX_DEPTH: u32 = 30;

pub fn table(n: [u64; 4]) -> ContingencyTable {
    ContingencyTable::new(n[0], n[1], n[2], n[3]).unwrap()
}

/// Every non-empty table with at most `max` observations.
pub fn all_tables(max: u64) -> Vec<ContingencyTable> {
    let mut out = Vec::new();
    for total in 1..=max {
        for n00 in 0..=total {
            for n01 in 0..=total - n00 {
                for n10 in 0..=total - n00 - n01 {
                    out.push(table([n00, n01, n10, total - n00 - n01 - n10]));
                }
            }
        }
    }
    out
}

// Kronrod abscissae and weights on [-1, 1] (positive half, QUADPACK
// qk15); the Gauss 7-point rule uses every other node.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod estimate and `|K15 − G7|` on `[a, b]`.
fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let pair = f(c - h * XGK[j]) + f(c + h * XGK[j]);
        k += WGK[j] * pair;
        if j % 2 == 1 {
            g += WG[j / 2] * pair;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (k, err) = kronrod(f, a, b);
    if depth == 0 || err <= tol.max(1e-14 * k.abs()) {
        return k;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth - 1) + adapt(f, m, b, 0.5 * tol, depth - 1)
}

/// Adaptive Gauss–Kronrod on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_kronrod<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    adapt(&f, a, b, tol, MAX_DEPTH)
}

pub fn integrate(f: impl Fn(f64) -> f64) -> f64 {
    adaptive_kronrod(f, 0.0, 1.0, TOL)
}

/// Nested adaptive rule over the unit square, `f(η, θ)`.
pub fn integrate_2d(f: impl Fn(f64, f64) -> f64) -> f64 {
    adaptive_kronrod(|eta| adaptive_kronrod(|theta| f(eta, theta), 0.0, 1.0, TOL), 0.0, 1.0, TOL)
}

pub fn factorial(n: u64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub fn choose(n: u64, k: u64) -> f64 {
    (0..k).map(|i| (n - i) as f64 / (i + 1) as f64).product()
}

/// `B(a, b)` for positive integer shapes.
pub fn beta_fn(a: u64, b: u64) -> f64 {
    factorial(a - 1) * factorial(b - 1) / factorial(a + b - 1)
}

pub fn beta_pdf(x: f64, a: u64, b: u64) -> f64 {
    x.powi(a as i32 - 1) * (1.0 - x).powi(b as i32 - 1) / beta_fn(a, b)
}

pub fn binom(k: u64, n: u64, p: f64) -> f64 {
    choose(n, k) * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
}

/// Uniform Dirichlet: `η ~ Beta(2, 2)`, `θ ~ Beta(1, 1)`.
pub fn eta_prior(eta: f64) -> f64 {
    beta_pdf(eta, 2, 2)
}

pub fn theta_prior(theta: f64) -> f64 {
    beta_pdf(theta, 1, 1)
}

// The γ factor of the likelihood has the same prior under both hypotheses
// and cancels from every ratio below.

fn swing_likelihood(n: &ContingencyTable, eta: f64, theta: f64) -> f64 {
    binom(n.n_triangle(), n.n_plus_plus(), eta) * binom(n.n01(), n.n_triangle(), theta)
}

/// Null marginal of `n`, θ pinned at one half.
pub fn null_marginal(n: &ContingencyTable) -> f64 {
    let eta_part = integrate(|eta| binom(n.n_triangle(), n.n_plus_plus(), eta) * eta_prior(eta));
    eta_part * binom(n.n01(), n.n_triangle(), 0.5)
}

/// Marginal of `n` under an alternative prior density on `(η, θ)`.
pub fn alternative_marginal(n: &ContingencyTable, prior: impl Fn(f64, f64) -> f64) -> f64 {
    integrate_2d(|eta, theta| swing_likelihood(n, eta, theta) * prior(eta, theta))
}

pub fn default_bf(n: &ContingencyTable) -> f64 {
    alternative_marginal(n, |eta, theta| eta_prior(eta) * theta_prior(theta)) / null_marginal(n)
}

/// `Bin(x01 | x△, ½) / m(x01 | x△)` with the default marginal by quadrature.
fn conditional_evidence_ratio(x01: u64, xt: u64) -> f64 {
    let default_marginal = integrate(|theta| binom(x01, xt, theta) * theta_prior(theta));
    binom(x01, xt, 0.5) / default_marginal
}

/// CI prior density on θ, `π(θ) E_{x|θ}[m0(x) / m(x)]`.
pub struct CiOracle {
    xt: u64,
    ratios: Vec<f64>,
}

impl CiOracle {
    pub fn new(xt: u64) -> Self {
        Self { xt, ratios: (0..=xt).map(|x01| conditional_evidence_ratio(x01, xt)).collect() }
    }

    pub fn density(&self, theta: f64) -> f64 {
        let expectation: f64 = (0..=self.xt).map(|x01| binom(x01, self.xt, theta) * self.ratios[x01 as usize]).sum();
        theta_prior(theta) * expectation
    }

    pub fn bf(&self, n: &ContingencyTable) -> f64 {
        alternative_marginal(n, |eta, theta| eta_prior(eta) * self.density(theta)) / null_marginal(n)
    }
}

/// I prior density on `(η, θ)` with the imaginary tables of size `x++`
/// enumerated cell by cell.
pub struct IOracle {
    xpp: u64,
    /// `(x01, x△, m0(x) / m(x))` over all quadrinomial tables of size `x++`.
    terms: Vec<(u64, u64, f64)>,
}

impl IOracle {
    pub fn new(xpp: u64) -> Self {
        let mut terms = Vec::new();
        for x00 in 0..=xpp {
            for x01 in 0..=xpp - x00 {
                for x10 in 0..=xpp - x00 - x01 {
                    let xt = x01 + x10;
                    let null = integrate(|eta| binom(xt, xpp, eta) * eta_prior(eta)) * binom(x01, xt, 0.5);
                    let full = integrate_2d(|eta, theta| {
                        binom(xt, xpp, eta) * binom(x01, xt, theta) * eta_prior(eta) * theta_prior(theta)
                    });
                    // γ is integrated out of the diagonal split
                    terms.push((x01, xt, null / full * diagonal_split_weight(x00, xpp - xt)));
                }
            }
        }
        Self { xpp, terms }
    }

    pub fn density(&self, eta: f64, theta: f64) -> f64 {
        let expectation: f64 =
            self.terms.iter().map(|&(x01, xt, r)| binom(xt, self.xpp, eta) * binom(x01, xt, theta) * r).sum();
        eta_prior(eta) * theta_prior(theta) * expectation
    }

    pub fn bf(&self, n: &ContingencyTable) -> f64 {
        alternative_marginal(n, |eta, theta| self.density(eta, theta)) / null_marginal(n)
    }
}

/// `∫ Bin(x00 | d, γ) π(γ) dγ` with `γ ~ Beta(1, 1)`; sums to one over `x00`.
fn diagonal_split_weight(x00: u64, d: u64) -> f64 {
    integrate(|gamma| binom(x00, d, gamma))
}

/// `|Δ ln BF|` measured against `max(1, |ln BF|)`.
pub fn log_rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}
