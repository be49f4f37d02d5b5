//! Deterministic Monte Carlo machinery: counter-derived random streams, the
//! pool/bootstrap resampling protocol, profile estimation, and replicate
//! sweeps.
//!
//! Determinism contract: every stochastic task draws from a stream uniquely
//! derived from `(seed, replicate_id, role)`. No task shares generator
//! state, replicate results are collected in replicate order, and every
//! accumulation is a fixed-order sequential sum, so outputs are bit-identical
//! regardless of how many threads execute the sweep.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ess::{
    ess_from_minimizer, minimize_distance, ConcordanceProfile, EssEstimate, EssMethod, Grid,
    SupportDirection,
};
use crate::Error;

/// Role of a derived stream within one replicate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StreamRole {
    Pool = 0,
    Bootstrap = 1,
    Direct = 2,
}

/// Derives a reproducible, statistically independent substream for
/// `(seed, replicate_id, role)`.
///
/// Uses the ChaCha stream counter, so substreams are independent by
/// construction and identical across runs and parallel schedules.
pub fn derive_stream(seed: u64, replicate_id: u64, role: StreamRole) -> ChaCha12Rng {
    assert!(replicate_id < u64::MAX / 4, "replicate_id out of range");
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(replicate_id * 4 + role as u64);
    rng
}

/// One summand of the frequentist slope estimate, with a flag marking draws
/// that hit the degeneracy clamp.
#[derive(Clone, Copy, Debug)]
pub struct PerUnitTerm {
    pub value: f64,
    pub clamped: bool,
}

impl PerUnitTerm {
    pub fn clean(value: f64) -> Self {
        Self { value, clamped: false }
    }
}

/// Knobs of the bootstrap protocol.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Size of the data pool standing in for a real dataset.
    #[serde(default = "default_pool_size")]
    pub pool_size: usize,
    /// Number of with-replacement resamples per replicate.
    #[serde(default = "default_bootstrap_count")]
    pub bootstrap_count: usize,
    /// Sample size on the Bayesian side (and of each resample).
    #[serde(default = "default_bayes_n")]
    pub bayes_n: usize,
    /// Number of replicates averaged into the final estimate.
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Integer search range for `ñ`; defaults to `[1, 20·bayes_n]`.
    #[serde(default)]
    pub grid: Option<Grid>,
    /// Reuse a single pool across replicates instead of redrawing one per
    /// replicate. Off by default so replicate scatter reflects both pool and
    /// resampling noise.
    #[serde(default)]
    pub shared_pool: bool,
}

fn default_pool_size() -> usize {
    5000
}
fn default_bootstrap_count() -> usize {
    10_000
}
fn default_bayes_n() -> usize {
    100
}
fn default_replicates() -> usize {
    100
}
fn default_seed() -> u64 {
    0xE55_1AB
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            pool_size: default_pool_size(),
            bootstrap_count: default_bootstrap_count(),
            bayes_n: default_bayes_n(),
            replicates: default_replicates(),
            seed: default_seed(),
            grid: None,
            shared_pool: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let positive = |field: &'static str, v: usize| {
            if v >= 1 {
                Ok(())
            } else {
                Err(Error::InvalidConfig { field, reason: "must be >= 1".into() })
            }
        };
        positive("pool_size", self.pool_size)?;
        positive("bootstrap_count", self.bootstrap_count)?;
        positive("bayes_n", self.bayes_n)?;
        positive("replicates", self.replicates)?;
        if self.bayes_n > self.pool_size {
            return Err(Error::InvalidConfig {
                field: "pool_size",
                reason: format!("bayes_n {} exceeds pool_size {}", self.bayes_n, self.pool_size),
            });
        }
        if let Some(g) = self.grid {
            g.validate()?;
        }
        Ok(())
    }

    pub fn grid(&self) -> Grid {
        self.grid.unwrap_or_else(|| Grid::default_for(self.bayes_n))
    }
}

struct Accumulated {
    profile: ConcordanceProfile,
    clamped_fraction: f64,
}

/// Shared accumulation core: sample means and standard errors of `z^2` and
/// the per-unit frequentist summand over a fixed number of draws.
fn accumulate_profile<S>(
    n: usize,
    draws: usize,
    mut next_summary: impl FnMut() -> S,
    z_bayes: impl Fn(&S) -> f64,
    per_unit_freq: impl Fn(&S) -> PerUnitTerm,
) -> Result<Accumulated, Error> {
    if draws < 2 {
        return Err(Error::InvalidConfig { field: "draws", reason: "must be >= 2".into() });
    }
    let mut sum_u = 0.0;
    let mut sum_u2 = 0.0;
    let mut sum_k = 0.0;
    let mut sum_k2 = 0.0;
    let mut clamped = 0usize;
    for _ in 0..draws {
        let s = next_summary();
        let z = z_bayes(&s);
        let z2 = z * z;
        sum_u += z2;
        sum_u2 += z2 * z2;
        let pu = per_unit_freq(&s);
        if pu.clamped {
            clamped += 1;
        }
        sum_k += pu.value;
        sum_k2 += pu.value * pu.value;
    }
    if clamped == draws {
        return Err(Error::AllDrawsDegenerate { draws });
    }
    let d = draws as f64;
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
    profile.assert_valid();
    Ok(Accumulated { profile, clamped_fraction: clamped as f64 / d })
}

/// Monte Carlo profile: `u_bayes` is the sample mean of `z_bayes(sample)^2`
/// over draws from the truth, `kappa` the sample mean of the per-unit
/// frequentist summand; `se` fields are sample SD / sqrt(draws).
pub fn estimate_profile_mc<S>(
    n: usize,
    draws: usize,
    mut sampler: impl FnMut(&mut ChaCha12Rng) -> S,
    z_bayes: impl Fn(&S) -> f64,
    per_unit_freq: impl Fn(&S) -> PerUnitTerm,
    rng: &mut ChaCha12Rng,
) -> Result<ConcordanceProfile, Error> {
    let acc = accumulate_profile(n, draws, || sampler(rng), z_bayes, per_unit_freq)?;
    Ok(acc.profile)
}

/// Bootstrap profile: `b` with-replacement resamples of size `n` from the
/// pool, summarized and fed through the same estimator as
/// [`estimate_profile_mc`].
pub fn bootstrap_profile<T: Copy, S>(
    pool: &[T],
    n: usize,
    b: usize,
    summarize: impl Fn(&[T]) -> S,
    z_bayes: impl Fn(&S) -> f64,
    per_unit_freq: impl Fn(&S) -> PerUnitTerm,
    rng: &mut ChaCha12Rng,
) -> Result<ConcordanceProfile, Error> {
    if pool.len() < n {
        return Err(Error::InvalidConfig {
            field: "pool",
            reason: format!("pool length {} below resample size {}", pool.len(), n),
        });
    }
    let mut buf: Vec<T> = Vec::with_capacity(n);
    let acc = accumulate_profile(
        n,
        b,
        || {
            buf.clear();
            for _ in 0..n {
                buf.push(pool[rand::Rng::gen_range(rng, 0..pool.len())]);
            }
            summarize(&buf)
        },
        z_bayes,
        per_unit_freq,
    )?;
    Ok(acc.profile)
}

/// A scenario the replicated bootstrap protocol can drive: how to draw a
/// pool from the truth, summarize one resample, and evaluate the two
/// statistics on a summary.
pub trait BootstrapScenario: Sync {
    type Pool: Send + Sync;
    type Summary;

    fn draw_pool(&self, pool_size: usize, rng: &mut ChaCha12Rng) -> Self::Pool;
    fn resample(&self, pool: &Self::Pool, n: usize, rng: &mut ChaCha12Rng) -> Self::Summary;
    fn z_bayes(&self, summary: &Self::Summary) -> f64;
    fn per_unit_freq(&self, summary: &Self::Summary) -> PerUnitTerm;
}

/// Outcome of one replicate; failed replicates keep their error message and
/// are excluded from the aggregate mean.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReplicateResult {
    pub replicate: usize,
    pub estimate: Option<EssEstimate>,
    pub error: Option<String>,
}

/// Replicated bootstrap estimates with their mean and spread.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EstimateSeries {
    pub per_replicate: Vec<ReplicateResult>,
    pub mean_ess: f64,
    pub sd_ess: f64,
    pub n_failed: usize,
}

impl EstimateSeries {
    fn from_results(per_replicate: Vec<ReplicateResult>) -> Self {
        let ess: Vec<f64> =
            per_replicate.iter().filter_map(|r| r.estimate.as_ref().map(|e| e.ess as f64)).collect();
        let n_failed = per_replicate.len() - ess.len();
        let mean = if ess.is_empty() { f64::NAN } else { ess.iter().sum::<f64>() / ess.len() as f64 };
        let sd = if ess.len() > 1 {
            let ss: f64 = ess.iter().map(|e| (e - mean) * (e - mean)).sum();
            (ss / (ess.len() - 1) as f64).sqrt()
        } else {
            0.0
        };
        Self { per_replicate, mean_ess: mean, sd_ess: sd, n_failed }
    }
}

/// Runs the full protocol: per replicate, draw a pool (fresh by default),
/// estimate the profile from `bootstrap_count` resamples of size `bayes_n`,
/// minimize the distance, and form the signed estimate; then aggregate.
///
/// Replicates run in parallel; results are invariant to the thread count.
pub fn run_replicated<S: BootstrapScenario>(
    config: &RunConfig,
    scenario: &S,
    direction: SupportDirection,
) -> Result<EstimateSeries, Error> {
    config.validate()?;
    let grid = config.grid();
    let shared_pool = config.shared_pool.then(|| {
        let mut rng = derive_stream(config.seed, 0, StreamRole::Pool);
        scenario.draw_pool(config.pool_size, &mut rng)
    });

    let results: Vec<ReplicateResult> = (0..config.replicates)
        .into_par_iter()
        .map(|r| {
            let outcome = run_one_replicate(config, scenario, direction, grid, shared_pool.as_ref(), r);
            match outcome {
                Ok(est) => ReplicateResult { replicate: r, estimate: Some(est), error: None },
                Err(e) => ReplicateResult { replicate: r, estimate: None, error: Some(e.to_string()) },
            }
        })
        .collect();

    Ok(EstimateSeries::from_results(results))
}

fn run_one_replicate<S: BootstrapScenario>(
    config: &RunConfig,
    scenario: &S,
    direction: SupportDirection,
    grid: Grid,
    shared_pool: Option<&S::Pool>,
    replicate: usize,
) -> Result<EssEstimate, Error> {
    let local_pool;
    let pool: &S::Pool = match shared_pool {
        Some(p) => p,
        None => {
            let mut rng = derive_stream(config.seed, replicate as u64, StreamRole::Pool);
            local_pool = scenario.draw_pool(config.pool_size, &mut rng);
            &local_pool
        }
    };
    let mut rng = derive_stream(config.seed, replicate as u64, StreamRole::Bootstrap);
    let acc = accumulate_profile(
        config.bayes_n,
        config.bootstrap_count,
        || scenario.resample(pool, config.bayes_n, &mut rng),
        |s| scenario.z_bayes(s),
        |s| scenario.per_unit_freq(s),
    )?;
    let minimized = minimize_distance(&acc.profile, grid);
    let mut est = ess_from_minimizer(config.bayes_n, minimized, direction, EssMethod::Bootstrap);
    est.diagnostics.insert("u_bayes".into(), acc.profile.u_bayes);
    est.diagnostics.insert("kappa".into(), acc.profile.kappa);
    est.diagnostics.insert("se_u_bayes".into(), acc.profile.se_u_bayes);
    est.diagnostics.insert("se_kappa".into(), acc.profile.se_kappa);
    est.diagnostics.insert("clamped_fraction".into(), acc.clamped_fraction);
    Ok(est)
}
