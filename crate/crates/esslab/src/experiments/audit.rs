//! Prior audit on user data: fit the simple regression, bootstrap the
//! concordance profile at the requested Bayesian sample size, and report the
//! signed ESS together with the average posterior Z magnitude.

use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::engine::{derive_stream, RunConfig, StreamRole};
use crate::ess::{
    ess_from_minimizer, minimize_distance, ConcordanceProfile, EssEstimate, EssMethod,
    SupportDirection,
};
use crate::experiments::synth::DataSet;
use crate::linreg::{z_bayes_linreg, SlopePrior};
use crate::Error;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditRequest {
    pub response_column: String,
    pub covariate_column: String,
    pub prior: SlopePrior,
    pub bayes_n: usize,
    pub config: RunConfig,
    pub direction: SupportDirection,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AuditReport {
    pub estimate: EssEstimate,
    /// Mean of |Z_B| over bootstrap resamples at size `bayes_n`.
    pub mean_abs_z_bayes: f64,
    /// |Z_F| of the full-data fit rescaled to size `bayes_n` (comparable to
    /// `mean_abs_z_bayes`).
    pub freq_abs_z: f64,
    /// One-sided upper-tail p-value of the full-data slope.
    pub p_value: f64,
    pub beta_hat: f64,
    pub sigma_hat: f64,
    pub sxx_per_n: f64,
    pub n_rows: usize,
}

/// Reads a numeric CSV with a header row into a [`DataSet`].
pub fn ingest_csv(path: &Path) -> Result<DataSet, Error> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Csv(e.to_string()))?;
    let columns: Vec<String> =
        reader.headers().map_err(|e| Error::Csv(e.to_string()))?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Csv(e.to_string()))?;
        let row: Result<Vec<f64>, _> = record.iter().map(|c| c.parse::<f64>()).collect();
        rows.push(row.map_err(|e| Error::Csv(format!("row {}: {e}", i + 1)))?);
    }
    Ok(DataSet { columns, rows })
}

/// Audits a slope prior against the data.
///
/// Resamples `bayes_n` rows with replacement `bootstrap_count` times; each
/// resample contributes the posterior Z from the no-intercept sufficient
/// statistics `(sxy, sxx)` and the per-sample frequentist summand
/// `(sxx/n)·beta_hat^2/sigma^2`. The error SD is estimated once from the
/// full-data residuals.
pub fn prior_audit(data: &DataSet, request: &AuditRequest) -> Result<AuditReport, Error> {
    let xi = data
        .column_index(&request.covariate_column)
        .ok_or_else(|| Error::ColumnMissing(request.covariate_column.clone()))?;
    let yi = data
        .column_index(&request.response_column)
        .ok_or_else(|| Error::ColumnMissing(request.response_column.clone()))?;

    let n_rows = data.rows.len();
    if request.bayes_n < 1 || request.bayes_n > n_rows {
        return Err(Error::InvalidConfig {
            field: "bayes_n",
            reason: format!("must be in [1, {n_rows}], got {}", request.bayes_n),
        });
    }
    let xy: Vec<(f64, f64)> = data.rows.iter().map(|r| (r[xi], r[yi])).collect();
    let x0 = xy[0].0;
    if xy.iter().all(|&(x, _)| x == x0) {
        return Err(Error::DegenerateDesign);
    }

    // full-data no-intercept fit and residual SD
    let sxx_full: f64 = xy.iter().map(|&(x, _)| x * x).sum();
    let sxy_full: f64 = xy.iter().map(|&(x, y)| x * y).sum();
    let beta_hat = sxy_full / sxx_full;
    let rss: f64 = xy.iter().map(|&(x, y)| (y - beta_hat * x) * (y - beta_hat * x)).sum();
    let sigma_hat = (rss / (n_rows as f64 - 1.0)).sqrt();
    let sxx_per_n = sxx_full / n_rows as f64;

    let n = request.bayes_n;
    let b = request.config.bootstrap_count;
    if b < 2 {
        return Err(Error::InvalidConfig { field: "bootstrap_count", reason: "must be >= 2".into() });
    }
    let mut rng = derive_stream(request.config.seed, 0, StreamRole::Bootstrap);
    let s2 = sigma_hat * sigma_hat;

    let mut sum_u = 0.0;
    let mut sum_u2 = 0.0;
    let mut sum_k = 0.0;
    let mut sum_k2 = 0.0;
    let mut sum_abs_z = 0.0;
    let mut degenerate = 0usize;
    for _ in 0..b {
        let mut sxx = 0.0;
        let mut sxy = 0.0;
        for _ in 0..n {
            let (x, y) = xy[rng.gen_range(0..n_rows)];
            sxx += x * x;
            sxy += x * y;
        }
        let z = z_bayes_linreg(&request.prior, sxy, sxx, sigma_hat);
        sum_u += z * z;
        sum_u2 += z * z * z * z;
        sum_abs_z += z.abs();
        // per-sample frequentist summand; a resample with sxx = 0 carries no
        // slope information and contributes nothing to the slope statistic
        let k = if sxx > 0.0 {
            sxy * sxy / (sxx * n as f64 * s2)
        } else {
            degenerate += 1;
            0.0
        };
        sum_k += k;
        sum_k2 += k * k;
    }
    if degenerate == b {
        return Err(Error::AllDrawsDegenerate { draws: b });
    }
    let d = b as f64;
    let mean_u = sum_u / d;
    let mean_k = sum_k / d;
    let var_u = (sum_u2 - d * mean_u * mean_u).max(0.0) / (d - 1.0);
    let var_k = (sum_k2 - d * mean_k * mean_k).max(0.0) / (d - 1.0);
    let profile = ConcordanceProfile {
        u_bayes: mean_u,
        kappa: mean_k,
        n,
        se_u_bayes: (var_u / d).sqrt(),
        se_kappa: (var_k / d).sqrt(),
    };

    let grid = request.config.grid.unwrap_or_else(|| crate::ess::Grid::default_for(n));
    let minimized = minimize_distance(&profile, grid);
    let mut estimate = ess_from_minimizer(n, minimized, request.direction, EssMethod::Bootstrap);
    estimate.diagnostics.insert("u_bayes".into(), profile.u_bayes);
    estimate.diagnostics.insert("kappa".into(), profile.kappa);
    estimate.diagnostics.insert("se_u_bayes".into(), profile.se_u_bayes);
    estimate.diagnostics.insert("se_kappa".into(), profile.se_kappa);
    estimate.diagnostics.insert("degenerate_fraction".into(), degenerate as f64 / d);

    let freq_abs_z = (beta_hat * (n as f64 * sxx_per_n).sqrt() / sigma_hat).abs();
    let z_full = beta_hat * sxx_full.sqrt() / sigma_hat;
    let std_normal = Normal::new(0.0, 1.0).expect("unit normal");
    let p_value = 1.0 - std_normal.cdf(z_full);

    Ok(AuditReport {
        estimate,
        mean_abs_z_bayes: sum_abs_z / d,
        freq_abs_z,
        p_value,
        beta_hat,
        sigma_hat,
        sxx_per_n,
        n_rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::synth::{synth_eqtl, EqtlConfig};

    fn request(prior_mean: f64, bayes_n: usize) -> AuditRequest {
        AuditRequest {
            response_column: "expression".into(),
            covariate_column: "genotype".into(),
            prior: SlopePrior::new(prior_mean, 0.01),
            bayes_n,
            config: RunConfig { bootstrap_count: 4000, seed: 31, ..RunConfig::default() },
            direction: SupportDirection::SupportsAlternative,
        }
    }

    #[test]
    fn missing_column_is_reported_by_name() {
        let data = synth_eqtl(&EqtlConfig { rows: 60, ..EqtlConfig::default() });
        let mut req = request(0.08, 50);
        req.covariate_column = "snp".into();
        match prior_audit(&data, &req) {
            Err(Error::ColumnMissing(c)) => assert_eq!(c, "snp"),
            other => panic!("expected ColumnMissing, got {other:?}"),
        }
    }

    #[test]
    fn constant_covariate_is_degenerate() {
        let data = DataSet {
            columns: vec!["genotype".into(), "expression".into()],
            rows: (0..50).map(|i| vec![1.0, i as f64 * 0.01]).collect(),
        };
        assert!(matches!(prior_audit(&data, &request(0.08, 40)), Err(Error::DegenerateDesign)));
    }

    #[test]
    fn accurate_prior_yields_positive_ess() {
        let data = synth_eqtl(&EqtlConfig::default());
        let report = prior_audit(&data, &request(0.08, 540)).unwrap();
        assert!(report.estimate.ess > 0, "ess = {}", report.estimate.ess);
        assert!(report.mean_abs_z_bayes > report.freq_abs_z);
        assert!(report.p_value > 0.0 && report.p_value < 0.5);
    }

    #[test]
    fn noninformative_prior_limit_gives_zero_ess() {
        let data = synth_eqtl(&EqtlConfig { rows: 400, ..EqtlConfig::default() });
        let mut req = request(0.0, 300);
        req.prior = SlopePrior::new(0.0, 1e9);
        let report = prior_audit(&data, &req).unwrap();
        assert!(report.estimate.ess.abs() <= 2, "ess = {}", report.estimate.ess);
    }

    #[test]
    fn audit_is_deterministic_given_seed() {
        let data = synth_eqtl(&EqtlConfig { rows: 200, ..EqtlConfig::default() });
        let a = prior_audit(&data, &request(0.06, 150)).unwrap();
        let b = prior_audit(&data, &request(0.06, 150)).unwrap();
        assert_eq!(a.estimate.ess, b.estimate.ess);
        assert_eq!(a.mean_abs_z_bayes.to_bits(), b.mean_abs_z_bayes.to_bits());
    }
}
