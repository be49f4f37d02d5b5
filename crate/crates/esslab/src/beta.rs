//! Beta–binomial families: one-sample and two-sample conjugate posteriors,
//! their normal approximations, exact enumeration profiles, and the
//! degenerate-proportion clamp used by Monte Carlo callers.
//!
//! The posterior `Beta(a+S, b+n−S)` is approximated by a normal in shape
//! only; the moments used here are the exact beta posterior moments.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::ess::ConcordanceProfile;
use crate::Error;

/// Exact one-sample enumeration cap (O(n) work).
pub const ENUMERATION_CAP_ONE_SAMPLE: usize = 2000;
/// Exact two-sample enumeration cap (O(n^2) work).
pub const ENUMERATION_CAP_TWO_SAMPLE: usize = 400;

/// Conjugate prior `theta ~ Beta(a, b)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BetaPrior {
    pub a: f64,
    pub b: f64,
}

impl BetaPrior {
    pub fn new(a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b > 0.0, "beta prior requires a > 0 and b > 0");
        Self { a, b }
    }

    pub fn mean(&self) -> f64 {
        self.a / (self.a + self.b)
    }

    pub fn strength(&self) -> f64 {
        self.a + self.b
    }
}

/// Bernoulli data-generating truth: one rate or a pair of group rates.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub enum BernoulliTruth {
    One(f64),
    Two(f64, f64),
}

impl BernoulliTruth {
    pub fn validate(&self) -> Result<(), Error> {
        let check = |t: f64| {
            if t > 0.0 && t < 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidConfig { field: "theta", reason: format!("{t} not in (0,1)") })
            }
        };
        match *self {
            BernoulliTruth::One(t) => check(t),
            BernoulliTruth::Two(t1, t2) => {
                check(t1)?;
                check(t2)
            }
        }
    }
}

/// Posterior moments of `Beta(a+s, b+n−s)` in normal-approximation form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PosteriorApprox {
    pub mu_tilde: f64,
    pub var_tilde: f64,
}

/// `mu = (a+s)/(a+b+n)`, `var = (a+s)(b+n−s)/[(a+b+n)^2 (a+b+n+1)]`.
///
/// These are the exact beta posterior mean and variance; only the shape of
/// the approximating distribution is normal.
pub fn posterior_approx_beta(prior: &BetaPrior, s: usize, n: usize) -> PosteriorApprox {
    assert!(s <= n, "need 0 <= s <= n");
    let (a, b) = (prior.a, prior.b);
    let sf = s as f64;
    let nf = n as f64;
    let total = a + b + nf;
    let mu_tilde = (a + sf) / total;
    let var_tilde = (a + sf) * (b + nf - sf) / (total * total * (total + 1.0));
    PosteriorApprox { mu_tilde, var_tilde }
}

/// One-sample Bayesian Z centered at the null boundary:
/// `(mu_tilde − theta0)/sigma_tilde`.
pub fn z_bayes_beta_one(prior: &BetaPrior, s: usize, n: usize, theta0: f64) -> f64 {
    let post = posterior_approx_beta(prior, s, n);
    (post.mu_tilde - theta0) / post.var_tilde.sqrt()
}

/// One-sample frequentist Z at hypothetical size `ñ` with `x̄` held fixed:
/// `(x̄ − theta0)/sqrt(theta0(1−theta0)/ñ)`.
pub fn z_freq_beta_one(xbar_fixed: f64, theta0: f64, n_tilde: usize) -> f64 {
    assert!(n_tilde >= 1);
    assert!(theta0 > 0.0 && theta0 < 1.0);
    (xbar_fixed - theta0) / (theta0 * (1.0 - theta0) / n_tilde as f64).sqrt()
}

/// Per-unit frequentist summand for the one-sample family; its expectation
/// is `kappa` (the summand never degenerates because `theta0` is interior).
pub fn per_unit_freq_beta_one(xbar: f64, theta0: f64) -> f64 {
    let d = xbar - theta0;
    d * d / (theta0 * (1.0 - theta0))
}

/// Clamps a sample proportion into `[1/(2n), 1 − 1/(2n)]`.
///
/// Returns the clamped value and whether the clamp fired. Keeps the plug-in
/// variance finite when a Monte Carlo draw lands on 0 or 1; callers record
/// the clamp fraction in diagnostics.
pub fn clamp_proportion(p: f64, n: usize) -> (f64, bool) {
    let lo = 1.0 / (2.0 * n as f64);
    let hi = 1.0 - lo;
    if p < lo {
        (lo, true)
    } else if p > hi {
        (hi, true)
    } else {
        (p, false)
    }
}

/// Two-sample Bayesian Z: difference of posterior means over the root of the
/// summed posterior variances.
pub fn z_bayes_beta_two(
    prior1: &BetaPrior,
    prior2: &BetaPrior,
    s_x: usize,
    s_y: usize,
    n: usize,
) -> f64 {
    let px = posterior_approx_beta(prior1, s_x, n);
    let py = posterior_approx_beta(prior2, s_y, n);
    (px.mu_tilde - py.mu_tilde) / (px.var_tilde + py.var_tilde).sqrt()
}

/// Two-sample frequentist Z at hypothetical size `ñ` with both observed
/// proportions held fixed and the plug-in variance in the denominator.
///
/// Errors with [`Error::DegenerateVariance`] when both proportions are
/// exactly 0 or 1; callers apply [`clamp_proportion`] first.
pub fn z_freq_beta_two(xbar: f64, ybar: f64, n_tilde: usize) -> Result<f64, Error> {
    assert!(n_tilde >= 1);
    let denom = xbar * (1.0 - xbar) + ybar * (1.0 - ybar);
    if denom <= 0.0 {
        return Err(Error::DegenerateVariance);
    }
    Ok((xbar - ybar) / (denom / n_tilde as f64).sqrt())
}

/// Per-unit frequentist summand for the two-sample family, with the
/// degeneracy clamp applied to each proportion. Returns the summand and
/// whether any clamp fired.
pub fn per_unit_freq_beta_two(xbar: f64, ybar: f64, n: usize) -> (f64, bool) {
    let (xc, cx) = clamp_proportion(xbar, n);
    let (yc, cy) = clamp_proportion(ybar, n);
    let d = xc - yc;
    let denom = xc * (1.0 - xc) + yc * (1.0 - yc);
    (d * d / denom, cx || cy)
}

/// Binomial(n, theta) probability weights for s = 0..=n, computed in log
/// space for stability at large n and extreme theta.
pub(crate) fn binomial_weights(n: usize, theta: f64) -> Vec<f64> {
    assert!(theta > 0.0 && theta < 1.0);
    let nf = n as f64;
    let ln_n_fact = ln_gamma(nf + 1.0);
    let lt = theta.ln();
    let lq = (1.0 - theta).ln();
    (0..=n)
        .map(|s| {
            let sf = s as f64;
            let ln_c = ln_n_fact - ln_gamma(sf + 1.0) - ln_gamma(nf - sf + 1.0);
            (ln_c + sf * lt + (nf - sf) * lq).exp()
        })
        .collect()
}

/// Exact one-sample profile by enumeration over `s ~ Binomial(n, theta)`.
///
/// `u_bayes = sum_s P(s)·z_bayes(s)^2`; `kappa` has the closed form
/// `[theta(1−theta)/n + (theta−theta0)^2]/[theta0(1−theta0)]`.
pub fn exact_profile_beta_one(
    prior: &BetaPrior,
    theta: f64,
    theta0: f64,
    n: usize,
) -> Result<ConcordanceProfile, Error> {
    if n > ENUMERATION_CAP_ONE_SAMPLE {
        return Err(Error::EnumerationCapExceeded { n, cap: ENUMERATION_CAP_ONE_SAMPLE });
    }
    assert!(n >= 1);
    assert!(theta > 0.0 && theta < 1.0);
    assert!(theta0 > 0.0 && theta0 < 1.0);

    let w = binomial_weights(n, theta);
    let mut u_bayes = 0.0;
    for s in 0..=n {
        let z = z_bayes_beta_one(prior, s, n, theta0);
        u_bayes += w[s] * z * z;
    }
    let kappa = (theta * (1.0 - theta) / n as f64 + (theta - theta0) * (theta - theta0))
        / (theta0 * (1.0 - theta0));
    Ok(ConcordanceProfile::exact(u_bayes, kappa, n))
}

/// Exact two-sample profile by double enumeration over the independent
/// binomial counts of the two groups.
///
/// `kappa` is the expectation of the clamped per-unit frequentist summand
/// `(x̄−ȳ)^2 / [x̄(1−x̄)+ȳ(1−ȳ)]`.
///
/// Terms are accumulated over unordered index pairs so that swapping
/// `(prior1, theta1)` with `(prior2, theta2)` reproduces bit-identical sums:
/// the swapped term `t'(i,j)` equals `t(j,i)` exactly, and IEEE addition is
/// commutative within each pair.
pub fn exact_profile_beta_two(
    prior1: &BetaPrior,
    prior2: &BetaPrior,
    theta1: f64,
    theta2: f64,
    n: usize,
) -> Result<ConcordanceProfile, Error> {
    if n > ENUMERATION_CAP_TWO_SAMPLE {
        return Err(Error::EnumerationCapExceeded { n, cap: ENUMERATION_CAP_TWO_SAMPLE });
    }
    assert!(n >= 1);
    let wx = binomial_weights(n, theta1);
    let wy = binomial_weights(n, theta2);

    let term_u = |i: usize, j: usize| -> f64 {
        let z = z_bayes_beta_two(prior1, prior2, i, j, n);
        wx[i] * wy[j] * (z * z)
    };
    let term_k = |i: usize, j: usize| -> f64 {
        let (v, _) = per_unit_freq_beta_two(i as f64 / n as f64, j as f64 / n as f64, n);
        wx[i] * wy[j] * v
    };

    let mut u_bayes = 0.0;
    let mut kappa = 0.0;
    for i in 0..=n {
        u_bayes += term_u(i, i);
        kappa += term_k(i, i);
        for j in (i + 1)..=n {
            u_bayes += term_u(i, j) + term_u(j, i);
            kappa += term_k(i, j) + term_k(j, i);
        }
    }
    Ok(ConcordanceProfile::exact(u_bayes, kappa, n))
}
