//! One-sample normal family: conjugate posterior, Bayesian and frequentist
//! Z statistics, exact second-moment profiles, and the closed-form ESS.
//!
//! Data are `X_i ~ N(mu, sigma^2)` with known `sigma`, tested one-sided
//! against a boundary of 0. The prior on the mean is `N(delta, sigma^2/m)`
//! where `m` is the prior precision multiplier.

use serde::{Deserialize, Serialize};

use crate::ess::ConcordanceProfile;

/// Conjugate prior `mu ~ N(delta, sigma^2/m)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NormalPrior {
    pub delta: f64,
    pub m: f64,
    pub sigma: f64,
}

impl NormalPrior {
    pub fn new(delta: f64, m: f64, sigma: f64) -> Self {
        assert!(m > 0.0, "prior precision multiplier m must be > 0");
        assert!(sigma > 0.0, "sigma must be > 0");
        Self { delta, m, sigma }
    }
}

/// Data-generating truth `X_i ~ N(mu_true, sigma^2)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct NormalTruth {
    pub mu_true: f64,
    pub sigma: f64,
}

/// Posterior `N((sum_x + m·delta)/(m+n), sigma^2/(m+n))`.
pub fn posterior_normal(prior: &NormalPrior, sum_x: f64, n: usize) -> (f64, f64) {
    assert!(n >= 1);
    let denom = prior.m + n as f64;
    let mu_post = (sum_x + prior.m * prior.delta) / denom;
    let var_post = prior.sigma * prior.sigma / denom;
    (mu_post, var_post)
}

/// Bayesian Z: posterior mean over posterior standard deviation.
pub fn z_bayes_normal(prior: &NormalPrior, sum_x: f64, n: usize) -> f64 {
    let (mu_post, var_post) = posterior_normal(prior, sum_x, n);
    mu_post / var_post.sqrt()
}

/// Frequentist Z at hypothetical size `ñ` with the observed mean held fixed:
/// `sqrt(ñ)·x̄/sigma`.
pub fn z_freq_normal(xbar_fixed: f64, sigma: f64, n_tilde: usize) -> f64 {
    assert!(n_tilde >= 1);
    (n_tilde as f64).sqrt() * xbar_fixed / sigma
}

/// Exact second-moment profile under the stated truth.
///
/// With `S = sum X_i`, `E(S + m·delta)^2 = n·sigma^2 + (n·mu + m·delta)^2`,
/// so `u_bayes = [n + (n·mu + m·delta)^2/sigma^2]/(m+n)`, and
/// `E(x̄^2) = sigma^2/n + mu^2` gives `kappa = 1/n + (mu/sigma)^2`.
pub fn exact_profile_normal(prior: &NormalPrior, truth: &NormalTruth, n: usize) -> ConcordanceProfile {
    assert!(n >= 1);
    assert!(
        (prior.sigma - truth.sigma).abs() <= 1e-12 * prior.sigma.abs().max(1.0),
        "prior and truth must agree on sigma"
    );
    let nf = n as f64;
    let s2 = truth.sigma * truth.sigma;
    let shift = nf * truth.mu_true + prior.m * prior.delta;
    let u_bayes = (nf + shift * shift / s2) / (prior.m + nf);
    let kappa = 1.0 / nf + truth.mu_true * truth.mu_true / s2;
    ConcordanceProfile::exact(u_bayes, kappa, n)
}

/// Closed-form ESS under truth `mu = 0`: `m·n·(1 − m·(delta/sigma)^2)/(m+n)`.
///
/// Reduces to `m·n/(m+n)` at `delta = 0`. The corresponding continuous
/// minimizer is `ñ* = n·(n + m^2·(delta/sigma)^2)/(m+n)`, which is what the
/// exact profile above yields; the pair reproduces this formula identically.
pub fn closed_form_ess_normal(prior: &NormalPrior, n: usize) -> f64 {
    assert!(n >= 1);
    let nf = n as f64;
    let d = prior.delta / prior.sigma;
    prior.m * nf * (1.0 - prior.m * d * d) / (prior.m + nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ess::{minimize_distance, signed_ess, Grid, SupportDirection};
    use approx::assert_relative_eq;

    #[test]
    fn posterior_symmetric_zero() {
        let p = NormalPrior::new(0.0, 20.0, 1.0);
        let (mu, var) = posterior_normal(&p, 0.0, 100);
        assert_eq!(mu, 0.0);
        assert_relative_eq!(var, 1.0 / 120.0, max_relative = 1e-12);
    }

    #[test]
    fn posterior_substitution() {
        let p = NormalPrior::new(0.5, 10.0, 1.0);
        let (mu, var) = posterior_normal(&p, 30.0, 90);
        assert_relative_eq!(mu, 0.35, max_relative = 1e-12);
        assert_relative_eq!(var, 0.01, max_relative = 1e-12);
    }

    #[test]
    fn posterior_flat_prior_limit() {
        let p = NormalPrior::new(3.0, 1e-9, 2.0);
        let (mu, var) = posterior_normal(&p, 50.0, 25);
        assert_relative_eq!(mu, 2.0, max_relative = 1e-8);
        assert_relative_eq!(var, 4.0 / 25.0, max_relative = 1e-8);
    }

    #[test]
    fn z_bayes_values() {
        let p = NormalPrior::new(0.0, 20.0, 1.0);
        assert_eq!(z_bayes_normal(&p, 0.0, 100), 0.0);
        assert_relative_eq!(
            z_bayes_normal(&p, 11.0, 100),
            (11.0 / 120.0) / (1.0f64 / 120.0).sqrt(),
            max_relative = 1e-12
        );
        assert_relative_eq!(z_bayes_normal(&p, 11.0, 100), 1.00416, max_relative = 1e-4);
        let p2 = NormalPrior::new(0.5, 20.0, 1.0);
        assert_relative_eq!(z_bayes_normal(&p2, 0.0, 100), 0.91287, max_relative = 1e-4);
    }

    #[test]
    fn z_freq_values() {
        assert_eq!(z_freq_normal(0.0, 1.0, 57), 0.0);
        assert_relative_eq!(z_freq_normal(0.1, 1.0, 100), 1.0, max_relative = 1e-12);
        assert_relative_eq!(z_freq_normal(0.1, 1.0, 400), 2.0, max_relative = 1e-12);
    }

    #[test]
    fn exact_profile_no_deviation() {
        let prior = NormalPrior::new(0.0, 20.0, 1.0);
        let truth = NormalTruth { mu_true: 0.0, sigma: 1.0 };
        let prof = exact_profile_normal(&prior, &truth, 100);
        assert_relative_eq!(prof.u_bayes, 100.0 / 120.0, max_relative = 1e-12);
        assert_relative_eq!(prof.kappa, 0.01, max_relative = 1e-12);
        assert_eq!(prof.se_u_bayes, 0.0);
    }

    #[test]
    fn exact_profile_deviation_gives_ess_13() {
        let prior = NormalPrior::new(0.1, 20.0, 1.0);
        let truth = NormalTruth { mu_true: 0.0, sigma: 1.0 };
        let prof = exact_profile_normal(&prior, &truth, 100);
        assert_relative_eq!(prof.u_bayes, 104.0 / 120.0, max_relative = 1e-12);
        let m = minimize_distance(&prof, Grid::default_for(100));
        assert_eq!(signed_ess(100, m.n_tilde_star, SupportDirection::SupportsNull), 13);
    }

    #[test]
    fn exact_profile_noninformative_limit() {
        let prior = NormalPrior::new(7.0, 1e-9, 1.0);
        let truth = NormalTruth { mu_true: 0.0, sigma: 1.0 };
        let prof = exact_profile_normal(&prior, &truth, 100);
        assert_relative_eq!(prof.u_bayes, 1.0, max_relative = 1e-6);
        let m = minimize_distance(&prof, Grid::default_for(100));
        assert_eq!(signed_ess(100, m.n_tilde_star, SupportDirection::SupportsNull), 0);
    }

    #[test]
    fn closed_form_values() {
        let n = 100;
        assert_relative_eq!(
            closed_form_ess_normal(&NormalPrior::new(0.0, 20.0, 1.0), n),
            2000.0 / 120.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            closed_form_ess_normal(&NormalPrior::new(0.1, 20.0, 1.0), n),
            2000.0 * 0.8 / 120.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            closed_form_ess_normal(&NormalPrior::new(0.5, 20.0, 1.0), n),
            -2000.0 * 4.0 / 120.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn closed_form_consistent_with_profile_pipeline() {
        // grid ESS from the exact profile equals the rounded closed form for
        // every m in 1..=50 and each deviation level
        let truth = NormalTruth { mu_true: 0.0, sigma: 1.0 };
        for delta in [0.0, 0.1, 0.5] {
            for m in 1..=50 {
                let prior = NormalPrior::new(delta, m as f64, 1.0);
                let prof = exact_profile_normal(&prior, &truth, 100);
                let min = minimize_distance(&prof, Grid::default_for(100));
                let ess = signed_ess(100, min.n_tilde_star, SupportDirection::SupportsNull);
                let closed = closed_form_ess_normal(&prior, 100);
                assert_relative_eq!(
                    min.n_tilde_continuous,
                    100.0 - closed,
                    max_relative = 1e-9
                );
                assert!(
                    (ess as f64 - closed).abs() <= 0.5 + 1e-9,
                    "m={m} delta={delta}: grid {ess} vs closed {closed}"
                );
            }
        }
    }

    #[test]
    fn ess_increasing_in_m_and_bounded() {
        let n = 100;
        let mut prev = f64::NEG_INFINITY;
        for m in 1..=200 {
            let ess = closed_form_ess_normal(&NormalPrior::new(0.0, m as f64, 1.0), n);
            assert!(ess > prev);
            assert!(ess < (m as f64).min(n as f64));
            prev = ess;
        }
    }

    #[test]
    fn deviation_flip_at_m_equals_inv_delta_sq() {
        let n = 100;
        let delta = 0.25; // flip at m = 16
        let at = closed_form_ess_normal(&NormalPrior::new(delta, 16.0, 1.0), n);
        assert!(at.abs() < 1e-9);
        assert!(closed_form_ess_normal(&NormalPrior::new(delta, 15.9, 1.0), n) > 0.0);
        assert!(closed_form_ess_normal(&NormalPrior::new(delta, 16.1, 1.0), n) < 0.0);
    }

    #[test]
    fn sigma_scaling_is_consistent() {
        // delta expressed in units of sigma leaves the closed form unchanged
        let a = closed_form_ess_normal(&NormalPrior::new(0.1, 20.0, 1.0), 100);
        let b = closed_form_ess_normal(&NormalPrior::new(0.2, 20.0, 2.0), 100);
        assert_relative_eq!(a, b, max_relative = 1e-12);
    }
}
