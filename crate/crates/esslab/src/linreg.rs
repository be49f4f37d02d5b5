//! Two-group mean comparison recast as simple linear regression on a 0/1
//! design: least-squares slope, conjugate slope posterior, and Z statistics.
//!
//! The slope posterior uses the no-intercept sufficient statistics
//! `sxy = Σ x_i y_i` and `sxx = Σ x_i^2`; with the group-1 mean fixed at 0
//! the intercept is known and the reduction is exact. When `ñ` replaces the
//! observed size, the design proportion `sxx/n` is held fixed along with the
//! fitted slope, mirroring the fixed-`x̄` convention of the one-sample case.

use serde::{Deserialize, Serialize};

/// Responses of the two groups (`x = 0` and `x = 1`) with known error SD.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwoGroupData {
    pub group1: Vec<f64>,
    pub group2: Vec<f64>,
    pub sigma: f64,
}

impl TwoGroupData {
    pub fn new(group1: Vec<f64>, group2: Vec<f64>, sigma: f64) -> Self {
        assert!(!group1.is_empty() && !group2.is_empty(), "both groups must be nonempty");
        assert!(sigma > 0.0, "sigma must be > 0");
        Self { group1, group2, sigma }
    }
}

/// Prior `beta1 ~ N(mu, var1)` on the slope.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SlopePrior {
    pub mu: f64,
    pub var1: f64,
}

impl SlopePrior {
    pub fn new(mu: f64, var1: f64) -> Self {
        assert!(var1 > 0.0, "prior variance must be > 0");
        Self { mu, var1 }
    }
}

/// Least-squares slope of the intercept model on the 0/1 design:
/// `beta1_hat = mean(group2) − mean(group1)` with variance
/// `sigma^2 (1/n1 + 1/n2)`.
pub fn lse_slope(data: &TwoGroupData) -> (f64, f64) {
    let n1 = data.group1.len() as f64;
    let n2 = data.group2.len() as f64;
    let m1 = data.group1.iter().sum::<f64>() / n1;
    let m2 = data.group2.iter().sum::<f64>() / n2;
    let var = data.sigma * data.sigma * (1.0 / n1 + 1.0 / n2);
    (m2 - m1, var)
}

/// Frequentist slope Z at hypothetical total size `ñ` with the fitted slope
/// and the design proportion `sxx/n` held fixed: `beta1_hat·sqrt(ñ·sxx/n)/sigma`.
pub fn z_freq_linreg(beta1_hat: f64, sxx_per_n: f64, sigma: f64, n_tilde: usize) -> f64 {
    assert!(n_tilde >= 1);
    assert!(sxx_per_n > 0.0, "sxx_per_n must be > 0");
    beta1_hat * (n_tilde as f64 * sxx_per_n).sqrt() / sigma
}

/// Conjugate slope posterior from the no-intercept sufficient statistics:
/// mean `(var1·sxy + mu·sigma^2)/(var1·sxx + sigma^2)`,
/// variance `sigma^2·var1/(var1·sxx + sigma^2)`.
pub fn posterior_slope(prior: &SlopePrior, sxy: f64, sxx: f64, sigma: f64) -> (f64, f64) {
    assert!(sxx >= 0.0);
    let s2 = sigma * sigma;
    let denom = prior.var1 * sxx + s2;
    let mu_tilde = (prior.var1 * sxy + prior.mu * s2) / denom;
    let var_tilde = s2 * prior.var1 / denom;
    (mu_tilde, var_tilde)
}

/// Bayesian slope Z: posterior mean over posterior standard deviation.
pub fn z_bayes_linreg(prior: &SlopePrior, sxy: f64, sxx: f64, sigma: f64) -> f64 {
    let (mu_tilde, var_tilde) = posterior_slope(prior, sxy, sxx, sigma);
    mu_tilde / var_tilde.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lse_equal_means() {
        let d = TwoGroupData::new(vec![1.0, 2.0, 3.0], vec![2.0, 2.0, 2.0], 1.0);
        let (b, _) = lse_slope(&d);
        assert_relative_eq!(b, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn lse_difference_of_means() {
        let d = TwoGroupData::new(vec![-0.1, 0.1], vec![0.2, 0.4], 1.0);
        let (b, v) = lse_slope(&d);
        assert_relative_eq!(b, 0.3, max_relative = 1e-12);
        assert_relative_eq!(v, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn lse_single_observation_per_group() {
        let d = TwoGroupData::new(vec![0.4], vec![1.1], 1.0);
        let (b, _) = lse_slope(&d);
        assert_relative_eq!(b, 0.7, max_relative = 1e-12);
    }

    #[test]
    fn z_freq_values() {
        assert_eq!(z_freq_linreg(0.0, 0.5, 1.0, 100), 0.0);
        assert_relative_eq!(z_freq_linreg(0.3, 0.5, 1.0, 100), 0.3 * 50f64.sqrt(), max_relative = 1e-12);
        assert_relative_eq!(z_freq_linreg(0.3, 0.5, 1.0, 25), 1.06066, max_relative = 1e-5);
    }

    #[test]
    fn posterior_no_data_returns_prior() {
        let p = SlopePrior::new(0.7, 0.25);
        let (mu, var) = posterior_slope(&p, 0.0, 0.0, 1.0);
        assert_eq!(mu, 0.7);
        assert_eq!(var, 0.25);
    }

    #[test]
    fn posterior_substitution() {
        let p = SlopePrior::new(0.0, 1.0);
        let (mu, var) = posterior_slope(&p, 15.0, 50.0, 1.0);
        assert_relative_eq!(mu, 15.0 / 51.0, max_relative = 1e-12);
        assert_relative_eq!(var, 1.0 / 51.0, max_relative = 1e-12);
        assert_relative_eq!(z_bayes_linreg(&p, 15.0, 50.0, 1.0), 2.10042, max_relative = 1e-5);
    }

    #[test]
    fn posterior_flat_prior_limit_is_least_squares() {
        let p = SlopePrior::new(3.0, 1e12);
        let (mu, var) = posterior_slope(&p, 15.0, 50.0, 1.0);
        assert_relative_eq!(mu, 0.3, max_relative = 1e-9);
        assert_relative_eq!(var, 1.0 / 50.0, max_relative = 1e-9);
    }

    #[test]
    fn z_bayes_informative_prior() {
        let p = SlopePrior::new(0.5, 1.0 / 12.0);
        assert_relative_eq!(z_bayes_linreg(&p, 15.0, 50.0, 1.0), 2.667, max_relative = 1e-3);
    }

    #[test]
    fn flat_prior_z_matches_frequentist_at_observed_size() {
        // as var1 grows, z_bayes converges pointwise to z_freq at n_tilde = n
        let (sxy, sxx, sigma) = (17.5, 60.0, 1.3);
        let n = 120usize;
        let sxx_per_n = sxx / n as f64;
        let beta_hat = sxy / sxx;
        let zf = z_freq_linreg(beta_hat, sxx_per_n, sigma, n);
        for var1 in [1.0, 100.0, 1e4, 1e8] {
            let zb = z_bayes_linreg(&SlopePrior::new(-2.0, var1), sxy, sxx, sigma);
            let gap = (zb - zf).abs();
            assert!(gap <= 60.0 / var1 + 1e-6, "var1={var1}: gap {gap}");
        }
    }
}
