//! Scenario registry: named, reproducible runs that emit one result table
//! plus a JSON metadata sidecar each.
//!
//! Naming: `fig*` ids produce plot-ready curves or replicate traces, `table*`
//! ids produce summary tables, `realdata*` ids run the prior audit on the
//! bundled synthetic genotype/expression generator. `<id>_rowK` selects the
//! K-th row (1-based) of the parent table.

use rand::Rng;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use serde_json::json;

use crate::baselines::{morita_ess, reimherr_mse_ess};
use crate::beta::{
    exact_profile_beta_one, exact_profile_beta_two, per_unit_freq_beta_one,
    per_unit_freq_beta_two, z_bayes_beta_one, z_bayes_beta_two, BetaPrior,
};
use crate::engine::{run_replicated, BootstrapScenario, PerUnitTerm, RunConfig};
use crate::ess::{minimize_distance, signed_ess, SupportDirection};
use crate::experiments::audit::{prior_audit, AuditRequest};
use crate::experiments::synth::{synth_eqtl, EqtlConfig};
use crate::experiments::table::ResultTable;
use crate::linreg::SlopePrior;
use crate::normal::{closed_form_ess_normal, exact_profile_normal, NormalPrior, NormalTruth};
use crate::{Error, PriorSpec, ScenarioTruth};

/// A registered scenario.
#[derive(Clone, Copy, Debug)]
pub struct ScenarioDef {
    pub id: &'static str,
    pub description: &'static str,
}

/// All registered scenario ids.
pub fn registry() -> Vec<ScenarioDef> {
    vec![
        ScenarioDef { id: "fig1", description: "normal-family distance curves for three priors at m=20 (no deviation, 0.1, 0.5)" },
        ScenarioDef { id: "fig2", description: "normal-family grid ESS vs closed form across m=1..50 at three deviation levels" },
        ScenarioDef { id: "fig4", description: "one-sample beta exact-enumeration ESS vs prior strength, concordant and deviating prior means" },
        ScenarioDef { id: "fig5", description: "two-group regression ESS vs prior intensity for prior means 0, 0.3, 0.5 under equal group means" },
        ScenarioDef { id: "fig6", description: "normal-family bootstrap replicate traces of ESS vs m at three deviation levels" },
        ScenarioDef { id: "fig20", description: "one-sample beta bootstrap replicate traces of ESS vs prior strength" },
        ScenarioDef { id: "table1", description: "two-sample beta ESS under equal true rates 0.4, concordant and deviating prior pairs" },
        ScenarioDef { id: "table2", description: "two-sample beta ESS under true rates 0.7 vs 0.2, optimistic and pessimistic prior pairs" },
        ScenarioDef { id: "table3", description: "two-group regression bootstrap ESS sweep, prior means 0 and 0.5 with true group gap 0.3" },
        ScenarioDef { id: "table4", description: "normal bootstrap sweep, no deviation, with comparator baselines" },
        ScenarioDef { id: "table5", description: "normal bootstrap sweep, deviation 0.1, with comparator baselines" },
        ScenarioDef { id: "table6", description: "normal bootstrap sweep, deviation 0.5, with comparator baselines" },
        ScenarioDef { id: "table7", description: "one-sample beta bootstrap sweep, concordant prior mean 0.7, with baselines" },
        ScenarioDef { id: "table8", description: "one-sample beta bootstrap sweep, deviating prior mean 0.5, with baselines" },
        ScenarioDef { id: "realdata1", description: "prior audit on synthetic genotype/expression data, positive effect, four prior means" },
        ScenarioDef { id: "realdata2", description: "prior audit on synthetic genotype/expression data, negative effect, four prior means" },
    ]
}

/// One scenario's outputs: the result table and its metadata sidecar.
#[derive(Clone, Debug)]
pub struct ScenarioOutput {
    pub id: String,
    pub table: ResultTable,
    pub metadata: serde_json::Value,
}

/// Runs a registered scenario with the given protocol knobs.
pub fn run_scenario(id: &str, config: &RunConfig) -> Result<ScenarioOutput, Error> {
    if let Some((base, row_str)) = id.split_once("_row") {
        if let Ok(row) = row_str.parse::<usize>() {
            let parent = run_scenario(base, config)?;
            let table = parent
                .table
                .select_row(row)
                .ok_or_else(|| Error::UnknownScenario(id.to_string()))?;
            let mut metadata = parent.metadata;
            metadata["row"] = json!(row);
            return Ok(ScenarioOutput { id: id.to_string(), table, metadata });
        }
    }
    config.validate()?;
    match id {
        "fig1" => fig1(config),
        "fig2" => fig2(config),
        "fig4" => fig4(config),
        "fig5" => fig5(config),
        "fig6" => fig6(config),
        "fig20" => fig20(config),
        "table1" => beta_two_table(config, "table1"),
        "table2" => beta_two_table(config, "table2"),
        "table3" => table3(config),
        "table4" => normal_boot_table(config, "table4", 0.0),
        "table5" => normal_boot_table(config, "table5", 0.1),
        "table6" => normal_boot_table(config, "table6", 0.5),
        "table7" => beta_boot_table(config, "table7", 0.7),
        "table8" => beta_boot_table(config, "table8", 0.5),
        "realdata1" => eqtl_audit_table(config, "realdata1", 1.0),
        "realdata2" => eqtl_audit_table(config, "realdata2", -1.0),
        _ => Err(Error::UnknownScenario(id.to_string())),
    }
}

fn base_meta(id: &str, config: &RunConfig) -> serde_json::Value {
    let description =
        registry().iter().find(|d| d.id == id).map(|d| d.description).unwrap_or_default();
    json!({
        "id": id,
        "description": description,
        "seed": config.seed,
        "config": serde_json::to_value(config).expect("config serializes"),
    })
}

// ---------------------------------------------------------------------------
// bootstrap scenario adapters
// ---------------------------------------------------------------------------

pub struct NormalBoot {
    pub prior: NormalPrior,
    pub truth: NormalTruth,
    pub n: usize,
}

impl BootstrapScenario for NormalBoot {
    type Pool = Vec<f64>;
    type Summary = f64; // sum of the resample

    fn draw_pool(&self, pool_size: usize, rng: &mut ChaCha12Rng) -> Vec<f64> {
        (0..pool_size)
            .map(|_| self.truth.mu_true + self.truth.sigma * rng.sample::<f64, _>(StandardNormal))
            .collect()
    }

    fn resample(&self, pool: &Vec<f64>, n: usize, rng: &mut ChaCha12Rng) -> f64 {
        let mut sum = 0.0;
        for _ in 0..n {
            sum += pool[rng.gen_range(0..pool.len())];
        }
        sum
    }

    fn z_bayes(&self, sum: &f64) -> f64 {
        crate::normal::z_bayes_normal(&self.prior, *sum, self.n)
    }

    fn per_unit_freq(&self, sum: &f64) -> PerUnitTerm {
        let xbar = sum / self.n as f64;
        let r = xbar / self.truth.sigma;
        PerUnitTerm::clean(r * r)
    }
}

pub struct BetaOneBoot {
    pub prior: BetaPrior,
    pub theta: f64,
    pub theta0: f64,
    pub n: usize,
}

impl BootstrapScenario for BetaOneBoot {
    type Pool = Vec<bool>;
    type Summary = usize; // success count of the resample

    fn draw_pool(&self, pool_size: usize, rng: &mut ChaCha12Rng) -> Vec<bool> {
        (0..pool_size).map(|_| rng.gen_bool(self.theta)).collect()
    }

    fn resample(&self, pool: &Vec<bool>, n: usize, rng: &mut ChaCha12Rng) -> usize {
        (0..n).filter(|_| pool[rng.gen_range(0..pool.len())]).count()
    }

    fn z_bayes(&self, s: &usize) -> f64 {
        z_bayes_beta_one(&self.prior, *s, self.n, self.theta0)
    }

    fn per_unit_freq(&self, s: &usize) -> PerUnitTerm {
        PerUnitTerm::clean(per_unit_freq_beta_one(*s as f64 / self.n as f64, self.theta0))
    }
}

pub struct BetaTwoBoot {
    pub prior1: BetaPrior,
    pub prior2: BetaPrior,
    pub theta1: f64,
    pub theta2: f64,
    pub n: usize,
}

impl BootstrapScenario for BetaTwoBoot {
    type Pool = (Vec<bool>, Vec<bool>);
    type Summary = (usize, usize);

    fn draw_pool(&self, pool_size: usize, rng: &mut ChaCha12Rng) -> (Vec<bool>, Vec<bool>) {
        let x = (0..pool_size).map(|_| rng.gen_bool(self.theta1)).collect();
        let y = (0..pool_size).map(|_| rng.gen_bool(self.theta2)).collect();
        (x, y)
    }

    fn resample(&self, pool: &(Vec<bool>, Vec<bool>), n: usize, rng: &mut ChaCha12Rng) -> (usize, usize) {
        let sx = (0..n).filter(|_| pool.0[rng.gen_range(0..pool.0.len())]).count();
        let sy = (0..n).filter(|_| pool.1[rng.gen_range(0..pool.1.len())]).count();
        (sx, sy)
    }

    fn z_bayes(&self, s: &(usize, usize)) -> f64 {
        z_bayes_beta_two(&self.prior1, &self.prior2, s.0, s.1, self.n)
    }

    fn per_unit_freq(&self, s: &(usize, usize)) -> PerUnitTerm {
        let nf = self.n as f64;
        let (value, clamped) = per_unit_freq_beta_two(s.0 as f64 / nf, s.1 as f64 / nf, self.n);
        PerUnitTerm { value, clamped }
    }
}

/// Two-group regression with the group-1 mean known to be 0: the slope
/// statistics depend on group 2 alone through `sxy = sum(y2)` and
/// `sxx = n`, so the pool holds group-2 responses and `ñ` counts group-2
/// samples (the units of `sum x^2`).
pub struct LinRegGroup2Boot {
    pub prior: SlopePrior,
    pub mu2: f64,
    pub sigma: f64,
    pub n: usize,
}

impl BootstrapScenario for LinRegGroup2Boot {
    type Pool = Vec<f64>;
    type Summary = f64; // sxy of the resample

    fn draw_pool(&self, pool_size: usize, rng: &mut ChaCha12Rng) -> Vec<f64> {
        (0..pool_size)
            .map(|_| self.mu2 + self.sigma * rng.sample::<f64, _>(StandardNormal))
            .collect()
    }

    fn resample(&self, pool: &Vec<f64>, n: usize, rng: &mut ChaCha12Rng) -> f64 {
        let mut sum = 0.0;
        for _ in 0..n {
            sum += pool[rng.gen_range(0..pool.len())];
        }
        sum
    }

    fn z_bayes(&self, sxy: &f64) -> f64 {
        crate::linreg::z_bayes_linreg(&self.prior, *sxy, self.n as f64, self.sigma)
    }

    fn per_unit_freq(&self, sxy: &f64) -> PerUnitTerm {
        let beta_hat = sxy / self.n as f64;
        let r = beta_hat / self.sigma;
        PerUnitTerm::clean(r * r)
    }
}

// ---------------------------------------------------------------------------
// figure scenarios
// ---------------------------------------------------------------------------

fn fig1(config: &RunConfig) -> Result<ScenarioOutput, Error> {
    let n = config.bayes_n;
    let truth = NormalTruth { mu_true: 0.0, sigma: 1.0 };
    let deltas = [0.0, 0.1, 0.5];
    let profiles: Vec<_> = deltas
        .iter()
        .map(|&d| exact_profile_normal(&NormalPrior::new(d, 20.0, 1.0), &truth, n))
        .collect();

    let mut table = ResultTable::new(&["n_tilde", "ess", "d_delta_0", "d_delta_0_1", "d_delta_0_5"]);
    for n_tilde in 1..=(3 * n) {
        let mut row = vec![n_tilde as f64, n as f64 - n_tilde as f64];
        for p in &profiles {
            row.push(crate::ess::distance(p, n_tilde));
        }
        table.push_row(row);
    }

    let minima: Vec<i64> = profiles
        .iter()
        .map(|p| signed_ess(n, minimize_distance(p, config.grid()).n_tilde_star, SupportDirection::SupportsNull))
        .collect();
    let mut metadata = base_meta("fig1", config);
    metadata["minima_ess"] = json!(minima);
    metadata["delta05_minimum_closed_form"] =
        json!(closed_form_ess_normal(&NormalPrior::new(0.5, 20.0, 1.0), n));
    metadata["delta05_reference_value"] = json!(-79);
    metadata["notes"] = json!([
        "the delta=0.5 minimum depends on n; the reference value -79 arises only for an n other than the default used here",
        format!("n = {n} for all three panels"),
    ]);
    Ok(ScenarioOutput { id: "fig1".into(), table, metadata })
}

fn fig2(config: &RunConfig) -> Result<ScenarioOutput, Error> {
    let n = config.bayes_n;
    let truth = NormalTruth { mu_true: 0.0, sigma: 1.0 };
    let mut table = ResultTable::new(&["delta", "m", "ess_estimated", "ess_closed_form"]);
    for delta in [0.0, 0.1, 0.5] {
        for m in 1..=50 {
            let prior = NormalPrior::new(delta, m as f64, 1.0);
            let profile = exact_profile_normal(&prior, &truth, n);
            let minimized = minimize_distance(&profile, config.grid());
            let ess = signed_ess(n, minimized.n_tilde_star, SupportDirection::SupportsNull);
            table.push_row(vec![delta, m as f64, ess as f64, closed_form_ess_normal(&prior, n)]);
        }
    }
    let mut metadata = base_meta("fig2", config);
    metadata["notes"] = json!([format!("n = {n} (free parameter of this sweep)")]);
    Ok(ScenarioOutput { id: "fig2".into(), table, metadata })
}

fn fig4(config: &RunConfig) -> Result<ScenarioOutput, Error> {
    let n = config.bayes_n;
    let theta0 = 0.7;
    let mut table = ResultTable::new(&["prior_mean", "strength", "ess", "ess_continuous"]);
    for prior_mean in [0.7, 0.5] {
        for strength in 1..=20 {
            let s = strength as f64;
            let prior = BetaPrior::new(prior_mean * s, (1.0 - prior_mean) * s);
            let profile = exact_profile_beta_one(&prior, theta0, theta0, n)?;
            let minimized = minimize_distance(&profile, config.grid());
            let ess = signed_ess(n, minimized.n_tilde_star, SupportDirection::SupportsNull);
            table.push_row(vec![
                prior_mean,
                s,
                ess as f64,
                n as f64 - minimized.n_tilde_continuous,
            ]);
        }
    }
    let mut metadata = base_meta("fig4", config);
    metadata["notes"] = json!([format!("true rate = boundary = {theta0}; n = {n}")]);
    Ok(ScenarioOutput { id: "fig4".into(), table, metadata })
}

fn fig5(config: &RunConfig) -> Result<ScenarioOutput, Error> {
    // Equal group means: the slope truth is 0. With the group-1 mean known,
    // the regression profile reduces exactly to the one-sample normal
    // profile with n = sum x^2 (the group-2 size).
    let n = config.bayes_n;
    let truth = NormalTruth { mu_true: 0.0, sigma: 1.0 };
    let mut table = ResultTable::new(&["prior_mean", "m", "ess", "ess_continuous"]);
    for prior_mean in [0.0, 0.3, 0.5] {
        for m in 1..=50 {
            let prior = NormalPrior::new(prior_mean, m as f64, 1.0);
            let profile = exact_profile_normal(&prior, &truth, n);
            let minimized = minimize_distance(&profile, config.grid());
            let ess = signed_ess(n, minimized.n_tilde_star, SupportDirection::SupportsNull);
            table.push_row(vec![
                prior_mean,
                m as f64,
                ess as f64,
                n as f64 - minimized.n_tilde_continuous,
            ]);
        }
    }
    let mut metadata = base_meta("fig5", config);
    metadata["conventions"] = json!({
        "sample_units": "group-2 size (= sum x^2 of the 0/1 design)",
        "group_sizes": format!("{n} per group"),
    });
    Ok(ScenarioOutput { id: "fig5".into(), table, metadata })
}

fn fig6(config: &RunConfig) -> Result<ScenarioOutput, Error> {
    let truth_sigma = 1.0;
    let mut table = ResultTable::new(&["delta", "m", "replicate", "ess"]);
    for delta in [0.0, 0.1, 0.5] {
        for m in (1..=50).step_by(3) {
            let scenario = NormalBoot {
                prior: NormalPrior::new(delta, m as f64, truth_sigma),
                truth: NormalTruth { mu_true: 0.0, sigma: truth_sigma },
                n: config.bayes_n,
            };
            let series = run_replicated(config, &scenario, SupportDirection::SupportsNull)?;
            for rep in &series.per_replicate {
                if let Some(est) = &rep.estimate {
                    table.push_row(vec![delta, m as f64, rep.replicate as f64, est.ess as f64]);
                }
            }
        }
    }
    Ok(ScenarioOutput { id: "fig6".into(), table, metadata: base_meta("fig6", config) })
}

fn fig20(config: &RunConfig) -> Result<ScenarioOutput, Error> {
    let theta0 = 0.7;
    let mut table = ResultTable::new(&["prior_mean", "strength", "replicate", "ess"]);
    for prior_mean in [0.7, 0.5] {
        for strength in 1..=20 {
            let s = strength as f64;
            let scenario = BetaOneBoot {
                prior: BetaPrior::new(prior_mean * s, (1.0 - prior_mean) * s),
                theta: theta0,
                theta0,
                n: config.bayes_n,
            };
            let series = run_replicated(config, &scenario, SupportDirection::SupportsNull)?;
            for rep in &series.per_replicate {
                if let Some(est) = &rep.estimate {
                    table.push_row(vec![prior_mean, s, rep.replicate as f64, est.ess as f64]);
                }
            }
        }
    }
    Ok(ScenarioOutput { id: "fig20".into(), table, metadata: base_meta("fig20", config) })
}

// ---------------------------------------------------------------------------
// table scenarios
// ---------------------------------------------------------------------------

fn beta_two_table(config: &RunConfig, id: &str) -> Result<ScenarioOutput, Error> {
    let n = config.bayes_n;
    #[allow(clippy::type_complexity)]
    let (truth, direction, rows): ((f64, f64), SupportDirection, Vec<((f64, f64), (f64, f64), f64)>) =
        match id {
            "table1" => (
                (0.4, 0.4),
                SupportDirection::SupportsNull,
                vec![
                    ((4.0, 6.0), (4.0, 6.0), 0.0),
                    ((2.0, 3.0), (2.0, 3.0), 0.0),
                    ((0.4, 0.6), (0.4, 0.6), 0.0),
                    ((1.0, 9.0), (1.0, 9.0), 0.0),
                    ((2.0, 8.0), (2.0, 8.0), 0.0),
                    ((3.0, 7.0), (3.0, 7.0), 0.0),
                    ((5.0, 5.0), (5.0, 5.0), 0.0),
                    ((6.0, 4.0), (6.0, 4.0), 0.0),
                    ((7.0, 3.0), (7.0, 3.0), 0.0),
                    ((8.0, 2.0), (8.0, 2.0), 0.0),
                    ((9.0, 1.0), (9.0, 1.0), 0.0),
                    ((4.0, 6.0), (2.0, 3.0), 0.0),
                    ((4.0, 6.0), (0.4, 0.6), 0.0),
                    ((4.0, 6.0), (0.04, 0.06), 0.0),
                    ((4.0, 6.0), (2.0, 8.0), 1.0),
                    ((4.0, 6.0), (1.0, 9.0), 1.0),
                    ((4.0, 6.0), (5.0, 5.0), 1.0),
                    ((4.0, 6.0), (6.0, 4.0), 1.0),
                    ((4.0, 6.0), (7.0, 3.0), 1.0),
                    ((4.0, 6.0), (8.0, 2.0), 1.0),
                    ((4.0, 6.0), (9.0, 1.0), 1.0),
                ],
            ),
            _ => (
                (0.7, 0.2),
                SupportDirection::SupportsAlternative,
                vec![
                    ((7.0, 3.0), (2.0, 8.0), 0.0),
                    ((3.5, 1.5), (1.0, 4.0), 0.0),
                    ((0.7, 0.3), (0.2, 0.8), 0.0),
                    ((7.0, 3.0), (7.0, 3.0), 1.0),
                    ((3.5, 1.5), (3.5, 1.5), 1.0),
                    ((0.7, 0.3), (0.7, 0.3), 1.0),
                    ((7.0, 3.0), (3.0, 7.0), 1.0),
                    ((7.0, 3.0), (4.0, 6.0), 1.0),
                    ((7.0, 3.0), (5.0, 5.0), 1.0),
                    ((7.0, 3.0), (1.0, 9.0), 1.0),
                    ((8.0, 2.0), (1.0, 9.0), 1.0),
                    ((9.0, 1.0), (1.0, 9.0), 1.0),
                    ((6.0, 4.0), (3.0, 7.0), 1.0),
                    ((6.0, 4.0), (4.0, 6.0), 1.0),
                    ((6.0, 4.0), (5.0, 5.0), 1.0),
                    ((5.0, 5.0), (5.0, 5.0), 1.0),
                ],
            ),
        };

    let mut table =
        ResultTable::new(&["a1", "b1", "a2", "b2", "deviation", "ess", "ess_continuous"]);
    for ((a1, b1), (a2, b2), dev) in rows {
        let p1 = BetaPrior::new(a1, b1);
        let p2 = BetaPrior::new(a2, b2);
        let profile = exact_profile_beta_two(&p1, &p2, truth.0, truth.1, n)?;
        let minimized = minimize_distance(&profile, config.grid());
        let ess = signed_ess(n, minimized.n_tilde_star, direction);
        let cont = match direction {
            SupportDirection::SupportsNull => n as f64 - minimized.n_tilde_continuous,
            SupportDirection::SupportsAlternative => minimized.n_tilde_continuous - n as f64,
        };
        table.push_row(vec![a1, b1, a2, b2, dev, ess as f64, cont]);
    }
    let mut metadata = base_meta(id, config);
    metadata["truth"] = json!({"theta1": truth.0, "theta2": truth.1});
    metadata["engine"] = json!("exact enumeration under the truth");
    Ok(ScenarioOutput { id: id.into(), table, metadata })
}

fn table3(config: &RunConfig) -> Result<ScenarioOutput, Error> {
    let sigma = 1.0;
    let mu2 = 0.3;
    let m_values: Vec<usize> =
        std::iter::once(1).chain((3..=48).step_by(3)).chain(std::iter::once(50)).collect();
    let mut table = ResultTable::new(&["prior_mean", "m", "ess_pvalue", "sd", "n_failed"]);
    for prior_mean in [0.0, 0.5] {
        for &m in &m_values {
            let scenario = LinRegGroup2Boot {
                prior: SlopePrior::new(prior_mean, sigma * sigma / m as f64),
                mu2,
                sigma,
                n: config.bayes_n,
            };
            let series = run_replicated(config, &scenario, SupportDirection::SupportsAlternative)?;
            table.push_row(vec![
                prior_mean,
                m as f64,
                series.mean_ess,
                series.sd_ess,
                series.n_failed as f64,
            ]);
        }
    }
    let mut metadata = base_meta("table3", config);
    metadata["conventions"] = json!({
        "sample_units": "group-2 size (= sum x^2 of the 0/1 design)",
        "group_sizes": format!("{} per group; group 1 enters through the known zero intercept", config.bayes_n),
        "truth": {"mu1": 0.0, "mu2": mu2, "sigma": sigma},
    });
    Ok(ScenarioOutput { id: "table3".into(), table, metadata })
}

fn normal_boot_table(config: &RunConfig, id: &str, delta: f64) -> Result<ScenarioOutput, Error> {
    let m_values: Vec<usize> = std::iter::once(1).chain((3..=30).step_by(3)).collect();
    let truth = NormalTruth { mu_true: 0.0, sigma: 1.0 };
    let mut table =
        ResultTable::new(&["m", "ess_pvalue", "ess_reimherr", "ess_morita", "sd", "n_failed"]);
    for &m in &m_values {
        let prior = NormalPrior::new(delta, m as f64, 1.0);
        let scenario = NormalBoot { prior, truth, n: config.bayes_n };
        let series = run_replicated(config, &scenario, SupportDirection::SupportsNull)?;
        let spec = PriorSpec::Normal(prior);
        let reimherr = reimherr_mse_ess(
            &spec,
            &ScenarioTruth::Normal { mu: truth.mu_true, sigma: truth.sigma },
            config.bayes_n,
            config,
        )?;
        table.push_row(vec![
            m as f64,
            series.mean_ess,
            reimherr.ess,
            morita_ess(&spec).ess,
            series.sd_ess,
            series.n_failed as f64,
        ]);
    }
    let mut metadata = base_meta(id, config);
    metadata["truth"] = json!({"mu": 0.0, "sigma": 1.0, "prior_delta": delta});
    Ok(ScenarioOutput { id: id.into(), table, metadata })
}

fn beta_boot_table(config: &RunConfig, id: &str, prior_mean: f64) -> Result<ScenarioOutput, Error> {
    let theta0 = 0.7;
    let mut table = ResultTable::new(&[
        "strength",
        "ess_pvalue",
        "ess_reimherr",
        "ess_morita",
        "sd",
        "n_failed",
    ]);
    for strength in 1..=20 {
        let s = strength as f64;
        let prior = BetaPrior::new(prior_mean * s, (1.0 - prior_mean) * s);
        let scenario = BetaOneBoot { prior, theta: theta0, theta0, n: config.bayes_n };
        let series = run_replicated(config, &scenario, SupportDirection::SupportsNull)?;
        let spec = PriorSpec::Beta(prior);
        let reimherr = reimherr_mse_ess(
            &spec,
            &ScenarioTruth::BernoulliOne { theta: theta0 },
            config.bayes_n,
            config,
        )?;
        table.push_row(vec![
            s,
            series.mean_ess,
            reimherr.ess,
            morita_ess(&spec).ess,
            series.sd_ess,
            series.n_failed as f64,
        ]);
    }
    let mut metadata = base_meta(id, config);
    metadata["truth"] = json!({"theta": theta0, "boundary": theta0, "prior_mean": prior_mean});
    Ok(ScenarioOutput { id: id.into(), table, metadata })
}

fn eqtl_audit_table(config: &RunConfig, id: &str, sign: f64) -> Result<ScenarioOutput, Error> {
    let rows = 576;
    let bayes_n = 540;
    let data = synth_eqtl(&EqtlConfig {
        rows,
        allele_freq: 0.3,
        beta: sign * 0.08,
        noise_sd: 1.0,
        seed: config.seed,
        pin_slope: true,
    });
    // a negative effect is audited on the negated response so the same
    // one-sided (greater-than) test applies
    let data = if sign < 0.0 {
        let mut d = data;
        for row in &mut d.rows {
            row[1] = -row[1];
        }
        d
    } else {
        data
    };

    let mut table =
        ResultTable::new(&["prior_mean", "ess", "mean_abs_z_bayes", "freq_abs_z", "p_value"]);
    for mean_mag in [0.04, 0.06, 0.07, 0.08] {
        let request = AuditRequest {
            response_column: "expression".into(),
            covariate_column: "genotype".into(),
            prior: SlopePrior::new(mean_mag, 1.0 / 100.0),
            bayes_n,
            config: *config,
            direction: SupportDirection::SupportsAlternative,
        };
        let report = prior_audit(&data, &request)?;
        table.push_row(vec![
            sign * mean_mag,
            report.estimate.ess as f64,
            report.mean_abs_z_bayes,
            report.freq_abs_z,
            report.p_value,
        ]);
    }
    let mut metadata = base_meta(id, config);
    metadata["generator"] = json!({
        "rows": rows, "bayes_n": bayes_n, "allele_freq": 0.3,
        "beta": sign * 0.08, "noise_sd": 1.0, "prior_var": 0.01,
    });
    if sign < 0.0 {
        metadata["notes"] =
            json!(["response negated internally so the one-sided greater-than test applies"]);
    }
    Ok(ScenarioOutput { id: id.into(), table, metadata })
}
