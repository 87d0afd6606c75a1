//! Bayesian evidence for the equality of two correlated proportions.
//!
//! Given a 2×2 matched-pairs table, this crate computes the default Bayes
//! factor induced by a Dirichlet prior on the cell probabilities, and two
//! families of intrinsic Bayes factors whose priors concentrate around the
//! null `θ = 1/2` as the imaginary sample grows:
//!
//! * the conditionally-intrinsic (CI) prior, built on the swing-only model
//!   `n01 | n△ ~ Bin(n△, θ)`;
//! * the fully-intrinsic (I) prior, built on the whole quadrinomial model.
//!
//! All evidence arithmetic is done in log space.
//!
//! ```
//! use corrprop::{ContingencyTable, DirichletHyper, default_log_bf, to_summary, Method};
//!
//! let table = ContingencyTable::new(20, 17, 10, 53).unwrap();
//! let log_bf = default_log_bf(&table, &DirichletHyper::uniform());
//! let summary = to_summary(log_bf, Method::Default, None);
//! assert!((summary.posterior_prob_h0 - 0.64).abs() < 0.005);
//! ```

pub mod ci;
pub mod error;
pub mod frequentist;
pub mod grid;
pub mod intrinsic;
pub mod model;
pub mod sensitivity;
pub mod special;

pub use ci::{ci_log_bf, ci_prior, BetaMixture, MixtureComponent};
pub use default_test::{default_log_bf, to_summary, EvidenceSummary, Method, PriorSize};
pub use error::{Error, Result};
pub use frequentist::{mcnemar_test, FrequentistResult, McNemarVariant};
pub use grid::{trapezoid, trapezoid_2d, UnitGrid};
pub use intrinsic::{
    h0_weights, i_log_bf, i_log_bf_via_mixture_identity, i_prior_density, i_prior_eta_marginal, i_prior_theta_marginal,
    ImaginaryWeightTable, IntrinsicPrior, IntrinsicPriorGrid,
};
pub use model::{
    log_conditional_likelihood, log_likelihood_full, normalized_likelihood_curve, reparametrize, BetaLaw,
    ContingencyTable, DirichletHyper, ImaginaryData, ReparamPrior,
};
pub use sensitivity::{
    default_q_grid, npp_dependence_curve, sensitivity_curve, DiagonalSplit, NppCurve, NppPoint, SensitivityCurve,
    SensitivityPoint,
};
