//! Effective sample size (ESS) of Bayesian priors, estimated by matching the
//! second moment of a Bayesian test statistic at sample size `n` against the
//! second moment of the corresponding frequentist statistic at a hypothetical
//! sample size `ñ`.
//!
//! For a one-sided test, both statistics are Z-scores. `U_n^B = E(Z_n^B)^2`
//! is fixed by the prior and the data-generating truth, while
//! `U_ñ^F = ñ·kappa` grows linearly in `ñ` because the observed mean is held
//! fixed as `ñ` varies. The `ñ*` minimizing `D(n,ñ) = |U_n^B − U_ñ^F|` pins
//! down a signed ESS: when the truth supports the null, `ESS = n − ñ*`; when
//! it supports the alternative, `ESS = ñ* − n`. Priors concordant with the
//! truth earn positive ESS, conflicting priors earn negative ESS.
//!
//! Modules:
//! - [`ess`]: the distance function, its minimizer, and sign conventions.
//! - [`normal`], [`beta`], [`linreg`]: the conjugate model families.
//! - [`engine`]: deterministic Monte Carlo and bootstrap estimation.
//! - [`baselines`]: comparator ESS methods (prior-intensity and matched-risk).
//! - [`experiments`]: scenario registry, result tables, and the prior audit.

pub mod baselines;
pub mod beta;
pub mod engine;
pub mod ess;
pub mod experiments;
pub mod linreg;
pub mod normal;

mod error;

pub use error::Error;

use serde::{Deserialize, Serialize};

/// A prior whose effective sample size is sought.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum PriorSpec {
    Normal(normal::NormalPrior),
    Beta(beta::BetaPrior),
}

/// The data-generating truth for a scenario.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum ScenarioTruth {
    Normal { mu: f64, sigma: f64 },
    BernoulliOne { theta: f64 },
    BernoulliTwo { theta1: f64, theta2: f64 },
    TwoGroupNormal { mu1: f64, mu2: f64, sigma: f64 },
}

impl ScenarioTruth {
    pub fn validate(&self) -> Result<(), Error> {
        let open_unit = |field: &'static str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig { field, reason: format!("{v} not in (0,1)") })
            }
        };
        match *self {
            ScenarioTruth::Normal { sigma, .. } | ScenarioTruth::TwoGroupNormal { sigma, .. } => {
                if sigma > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidConfig { field: "sigma", reason: "must be > 0".into() })
                }
            }
            ScenarioTruth::BernoulliOne { theta } => open_unit("theta", theta),
            ScenarioTruth::BernoulliTwo { theta1, theta2 } => {
                open_unit("theta1", theta1)?;
                open_unit("theta2", theta2)
            }
        }
    }
}
