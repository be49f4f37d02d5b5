//! `esslab` — estimate the effective sample size of a prior, run simulation
//! sweeps, reproduce the bundled reference scenarios, and audit priors
//! against CSV data.
//!
//! Machine-readable payload (JSON or CSV) goes to stdout; logs and progress
//! go to stderr. Exit codes: 0 success, 2 validation error, 3 minimizer at
//! the grid boundary.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};
use serde_json::json;

use esslab::beta::{
    exact_profile_beta_one, exact_profile_beta_two, per_unit_freq_beta_one,
    per_unit_freq_beta_two, z_bayes_beta_one, z_bayes_beta_two, BetaPrior,
};
use esslab::engine::{
    derive_stream, estimate_profile_mc, run_replicated, PerUnitTerm, RunConfig, StreamRole,
};
use esslab::ess::{
    ess_from_minimizer, minimize_distance, EssEstimate, EssMethod, Grid, HypothesisSpec,
    SupportDirection, TestFamily,
};
use esslab::experiments::{
    ingest_csv, prior_audit, registry, run_scenario, synth_eqtl, AuditRequest, BetaOneBoot,
    BetaTwoBoot, EqtlConfig, NormalBoot,
};
use esslab::linreg::SlopePrior;
use esslab::normal::{closed_form_ess_normal, exact_profile_normal, NormalPrior, NormalTruth};

const EXIT_VALIDATION: u8 = 2;
const EXIT_BOUNDARY: u8 = 3;

#[derive(Parser)]
#[command(name = "esslab", version, about = "Effective sample size of Bayesian priors via test-statistic concordance")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate the ESS of a single prior under a stated truth
    Estimate(EstimateArgs),
    /// Run one scenario described by a JSON config file
    Simulate(SimulateArgs),
    /// Run registered scenarios, writing CSV results and JSON metadata
    Reproduce(ReproduceArgs),
    /// Audit a slope prior against a CSV dataset
    Audit(AuditArgs),
    /// Generate a synthetic genotype/expression CSV for audit demos
    SynthEqtl(SynthArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Normal,
    Beta1,
    Beta2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    ClosedForm,
    Enum,
    Mc,
    Bootstrap,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    Null,
    Alt,
}

impl From<DirectionArg> for SupportDirection {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Null => SupportDirection::SupportsNull,
            DirectionArg::Alt => SupportDirection::SupportsAlternative,
        }
    }
}

#[derive(Args)]
struct EstimateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, value_enum)]
    engine: Engine,
    /// Bayesian-side sample size n
    #[arg(long)]
    n: usize,

    /// Prior precision multiplier m (family normal)
    #[arg(long)]
    m: Option<f64>,
    /// Prior mean delta (family normal)
    #[arg(long, default_value_t = 0.0)]
    delta: f64,
    /// Known likelihood SD
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// True mean of the data-generating normal
    #[arg(long, default_value_t = 0.0)]
    mu_true: f64,

    /// Beta prior "a,b" (families beta1/beta2)
    #[arg(long, value_parser = parse_beta_pair)]
    prior1: Option<(f64, f64)>,
    /// Second beta prior "a,b" (family beta2)
    #[arg(long, value_parser = parse_beta_pair)]
    prior2: Option<(f64, f64)>,
    /// Null boundary theta0 (family beta1)
    #[arg(long)]
    theta0: Option<f64>,
    /// True rate (family beta1; defaults to theta0)
    #[arg(long)]
    theta: Option<f64>,
    /// True rate of group 1 (family beta2)
    #[arg(long)]
    theta1: Option<f64>,
    /// True rate of group 2 (family beta2)
    #[arg(long)]
    theta2: Option<f64>,

    /// Override the truth-implied sign convention
    #[arg(long, value_enum)]
    direction: Option<DirectionArg>,
    /// Draws for the mc engine
    #[arg(long, default_value_t = 200_000)]
    draws: usize,
    /// Pool size for the bootstrap engine
    #[arg(long, default_value_t = 5000)]
    pool_size: usize,
    /// Resamples for the bootstrap engine
    #[arg(long, default_value_t = 10_000)]
    bootstrap_count: usize,
    #[arg(long)]
    grid_lo: Option<usize>,
    #[arg(long)]
    grid_hi: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SimulateArgs {
    /// JSON config: {"scenario": "<id>", "config": {<protocol knobs>}}
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Metadata sidecar path (defaults to <out>.meta.json when --out is set)
    #[arg(long)]
    meta: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Run every registered scenario
    #[arg(long, conflicts_with = "id")]
    all: bool,
    /// Run a single scenario id (see --list)
    #[arg(long)]
    id: Option<String>,
    /// List registered scenario ids and exit
    #[arg(long, conflicts_with_all = ["all", "id"])]
    list: bool,
    /// Output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Protocol overrides for quick runs
    #[arg(long)]
    replicates: Option<usize>,
    #[arg(long)]
    bootstrap_count: Option<usize>,
    #[arg(long)]
    pool_size: Option<usize>,
    #[arg(long)]
    bayes_n: Option<usize>,
}

#[derive(Args)]
struct AuditArgs {
    /// CSV file with a header row
    #[arg(long)]
    data: PathBuf,
    /// Response column name
    #[arg(long)]
    response: String,
    /// Covariate column name
    #[arg(long)]
    covariate: String,
    #[arg(long)]
    prior_mean: f64,
    #[arg(long, default_value_t = 0.01)]
    prior_var: f64,
    /// Bayesian-side sample size (resample size)
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "alt")]
    direction: DirectionArg,
    #[arg(long, default_value_t = 10_000)]
    bootstrap_count: usize,
    #[arg(long)]
    grid_lo: Option<usize>,
    #[arg(long)]
    grid_hi: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long, default_value_t = 576)]
    rows: usize,
    #[arg(long, default_value_t = 0.3)]
    allele_freq: f64,
    #[arg(long, default_value_t = 0.08)]
    beta: f64,
    #[arg(long, default_value_t = 1.0)]
    noise_sd: f64,
    /// Keep the raw noise draw instead of pinning the fitted slope to --beta
    #[arg(long)]
    no_pin_slope: bool,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

fn parse_beta_pair(s: &str) -> Result<(f64, f64), String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected \"a,b\"".into());
    }
    let a: f64 = parts[0].trim().parse().map_err(|e| format!("a: {e}"))?;
    let b: f64 = parts[1].trim().parse().map_err(|e| format!("b: {e}"))?;
    if a <= 0.0 || b <= 0.0 {
        return Err("beta parameters must be > 0".into());
    }
    Ok((a, b))
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<esslab::Error> for Failure {
    fn from(e: esslab::Error) -> Self {
        let code = match e {
            esslab::Error::MinimizerAtBoundary { .. } => EXIT_BOUNDARY,
            _ => EXIT_VALIDATION,
        };
        fail(code, e.to_string())
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Reproduce(args) => cmd_reproduce(args),
        Command::Audit(args) => cmd_audit(args),
        Command::SynthEqtl(args) => cmd_synth(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// ESSLAB_THREADS caps engine parallelism; results are invariant to it.
fn configure_threads() {
    if let Ok(v) = std::env::var("ESSLAB_THREADS") {
        match v.parse::<usize>() {
            Ok(k) if k >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
            }
            _ => eprintln!("warning: ignoring invalid ESSLAB_THREADS={v}"),
        }
    }
}

/// Explicit seed, or a fresh one echoed to stderr.
fn resolve_seed(seed: Option<u64>) -> u64 {
    let s = seed.unwrap_or_else(|| rand::thread_rng().gen());
    eprintln!("seed: {s}");
    s
}

fn grid_from(n: usize, lo: Option<usize>, hi: Option<usize>) -> Result<Grid, Failure> {
    let g = Grid::default_for(n);
    let grid = Grid { lo: lo.unwrap_or(g.lo), hi: hi.unwrap_or(g.hi) };
    grid.validate()?;
    Ok(grid)
}

fn require<T>(v: Option<T>, field: &str) -> Result<T, Failure> {
    v.ok_or_else(|| fail(EXIT_VALIDATION, format!("missing required flag --{field}")))
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<(), Failure> {
    let s = serde_json::to_string_pretty(value).map_err(|e| fail(EXIT_VALIDATION, e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn cmd_estimate(args: EstimateArgs) -> Result<(), Failure> {
    if args.n < 1 {
        return Err(fail(EXIT_VALIDATION, "--n must be >= 1"));
    }
    let seed = resolve_seed(args.seed);
    let grid = grid_from(args.n, args.grid_lo, args.grid_hi)?;
    let estimate = match args.family {
        Family::Normal => estimate_normal(&args, seed, grid)?,
        Family::Beta1 => estimate_beta_one(&args, seed, grid)?,
        Family::Beta2 => estimate_beta_two(&args, seed, grid)?,
    };
    let at_boundary = estimate.at_boundary;
    print_json(&json!({ "seed": seed, "estimate": estimate }))?;
    if at_boundary {
        return Err(fail(EXIT_BOUNDARY, "continuous minimizer outside the search grid"));
    }
    Ok(())
}

fn default_direction(truth_above_boundary: bool) -> SupportDirection {
    if truth_above_boundary {
        SupportDirection::SupportsAlternative
    } else {
        SupportDirection::SupportsNull
    }
}

fn boot_config(args: &EstimateArgs, seed: u64, grid: Grid) -> RunConfig {
    RunConfig {
        pool_size: args.pool_size,
        bootstrap_count: args.bootstrap_count,
        bayes_n: args.n,
        replicates: 1,
        seed,
        grid: Some(grid),
        shared_pool: false,
    }
}

fn single_replicate(series: esslab::engine::EstimateSeries) -> Result<EssEstimate, Failure> {
    let rep = series.per_replicate.into_iter().next().expect("one replicate");
    match rep.estimate {
        Some(e) => Ok(e),
        None => Err(fail(EXIT_VALIDATION, rep.error.unwrap_or_else(|| "replicate failed".into()))),
    }
}

fn estimate_normal(args: &EstimateArgs, seed: u64, grid: Grid) -> Result<EssEstimate, Failure> {
    let m = require(args.m, "m")?;
    if m <= 0.0 || args.sigma <= 0.0 {
        return Err(fail(EXIT_VALIDATION, "--m and --sigma must be > 0"));
    }
    let prior = NormalPrior::new(args.delta, m, args.sigma);
    let truth = NormalTruth { mu_true: args.mu_true, sigma: args.sigma };
    let direction =
        args.direction.map(Into::into).unwrap_or_else(|| default_direction(args.mu_true > 0.0));
    let n = args.n;

    let mut estimate = match args.engine {
        Engine::ClosedForm => {
            let profile = exact_profile_normal(&prior, &truth, n);
            let mut est =
                ess_from_minimizer(n, minimize_distance(&profile, grid), direction, EssMethod::ClosedForm);
            est.diagnostics.insert("u_bayes".into(), profile.u_bayes);
            est.diagnostics.insert("kappa".into(), profile.kappa);
            est
        }
        Engine::Mc => {
            let mut rng = derive_stream(seed, 0, StreamRole::Direct);
            let nf = n as f64;
            let (mu, sg) = (truth.mu_true, truth.sigma);
            let profile = estimate_profile_mc(
                n,
                args.draws,
                |r| nf * mu + sg * nf.sqrt() * r.sample::<f64, _>(StandardNormal),
                |sum| esslab::normal::z_bayes_normal(&prior, *sum, n),
                |sum| {
                    let xbar = sum / nf;
                    PerUnitTerm::clean((xbar / sg) * (xbar / sg))
                },
                &mut rng,
            )?;
            let mut est =
                ess_from_minimizer(n, minimize_distance(&profile, grid), direction, EssMethod::MonteCarlo);
            est.diagnostics.insert("u_bayes".into(), profile.u_bayes);
            est.diagnostics.insert("kappa".into(), profile.kappa);
            est.diagnostics.insert("se_u_bayes".into(), profile.se_u_bayes);
            est.diagnostics.insert("se_kappa".into(), profile.se_kappa);
            est
        }
        Engine::Bootstrap => {
            let scenario = NormalBoot { prior, truth, n };
            single_replicate(run_replicated(&boot_config(args, seed, grid), &scenario, direction)?)?
        }
        Engine::Enum => {
            return Err(fail(
                EXIT_VALIDATION,
                "--engine enum applies to beta families; use closed-form, mc, or bootstrap for --family normal",
            ))
        }
    };
    estimate
        .diagnostics
        .insert("closed_form_ess".into(), closed_form_ess_normal(&prior, n));
    Ok(estimate)
}

fn estimate_beta_one(args: &EstimateArgs, seed: u64, grid: Grid) -> Result<EssEstimate, Failure> {
    let (a, b) = require(args.prior1, "prior1")?;
    let theta0 = require(args.theta0, "theta0")?;
    HypothesisSpec { family: TestFamily::BetaOneSample, null_boundary: Some(theta0) }.validate()?;
    let theta = args.theta.unwrap_or(theta0);
    if theta <= 0.0 || theta >= 1.0 {
        return Err(fail(EXIT_VALIDATION, "--theta must lie in (0,1)"));
    }
    let prior = BetaPrior::new(a, b);
    let direction =
        args.direction.map(Into::into).unwrap_or_else(|| default_direction(theta > theta0));
    let n = args.n;

    let estimate = match args.engine {
        Engine::Enum => {
            let profile = exact_profile_beta_one(&prior, theta, theta0, n)?;
            let mut est = ess_from_minimizer(
                n,
                minimize_distance(&profile, grid),
                direction,
                EssMethod::ExactEnumeration,
            );
            est.diagnostics.insert("u_bayes".into(), profile.u_bayes);
            est.diagnostics.insert("kappa".into(), profile.kappa);
            est
        }
        Engine::Mc => {
            let mut rng = derive_stream(seed, 0, StreamRole::Direct);
            let binom = Binomial::new(n as u64, theta)
                .map_err(|e| fail(EXIT_VALIDATION, e.to_string()))?;
            let profile = estimate_profile_mc(
                n,
                args.draws,
                |r| binom.sample(r) as usize,
                |s| z_bayes_beta_one(&prior, *s, n, theta0),
                |s| PerUnitTerm::clean(per_unit_freq_beta_one(*s as f64 / n as f64, theta0)),
                &mut rng,
            )?;
            ess_from_minimizer(n, minimize_distance(&profile, grid), direction, EssMethod::MonteCarlo)
        }
        Engine::Bootstrap => {
            let scenario = BetaOneBoot { prior, theta, theta0, n };
            single_replicate(run_replicated(&boot_config(args, seed, grid), &scenario, direction)?)?
        }
        Engine::ClosedForm => {
            return Err(fail(
                EXIT_VALIDATION,
                "--engine closed-form applies to --family normal; use enum, mc, or bootstrap",
            ))
        }
    };
    Ok(estimate)
}

fn estimate_beta_two(args: &EstimateArgs, seed: u64, grid: Grid) -> Result<EssEstimate, Failure> {
    let (a1, b1) = require(args.prior1, "prior1")?;
    let (a2, b2) = require(args.prior2, "prior2")?;
    let theta1 = require(args.theta1, "theta1")?;
    let theta2 = require(args.theta2, "theta2")?;
    for (name, t) in [("theta1", theta1), ("theta2", theta2)] {
        if t <= 0.0 || t >= 1.0 {
            return Err(fail(EXIT_VALIDATION, format!("--{name} must lie in (0,1)")));
        }
    }
    let prior1 = BetaPrior::new(a1, b1);
    let prior2 = BetaPrior::new(a2, b2);
    let direction =
        args.direction.map(Into::into).unwrap_or_else(|| default_direction(theta1 > theta2));
    let n = args.n;

    let estimate = match args.engine {
        Engine::Enum => {
            let profile = exact_profile_beta_two(&prior1, &prior2, theta1, theta2, n)?;
            let mut est = ess_from_minimizer(
                n,
                minimize_distance(&profile, grid),
                direction,
                EssMethod::ExactEnumeration,
            );
            est.diagnostics.insert("u_bayes".into(), profile.u_bayes);
            est.diagnostics.insert("kappa".into(), profile.kappa);
            est
        }
        Engine::Mc => {
            let mut rng = derive_stream(seed, 0, StreamRole::Direct);
            let bx = Binomial::new(n as u64, theta1)
                .map_err(|e| fail(EXIT_VALIDATION, e.to_string()))?;
            let by = Binomial::new(n as u64, theta2)
                .map_err(|e| fail(EXIT_VALIDATION, e.to_string()))?;
            let profile = estimate_profile_mc(
                n,
                args.draws,
                |r| (bx.sample(r) as usize, by.sample(r) as usize),
                |s: &(usize, usize)| z_bayes_beta_two(&prior1, &prior2, s.0, s.1, n),
                |s| {
                    let nf = n as f64;
                    let (value, clamped) =
                        per_unit_freq_beta_two(s.0 as f64 / nf, s.1 as f64 / nf, n);
                    PerUnitTerm { value, clamped }
                },
                &mut rng,
            )?;
            ess_from_minimizer(n, minimize_distance(&profile, grid), direction, EssMethod::MonteCarlo)
        }
        Engine::Bootstrap => {
            let scenario = BetaTwoBoot { prior1, prior2, theta1, theta2, n };
            single_replicate(run_replicated(&boot_config(args, seed, grid), &scenario, direction)?)?
        }
        Engine::ClosedForm => {
            return Err(fail(
                EXIT_VALIDATION,
                "--engine closed-form applies to --family normal; use enum, mc, or bootstrap",
            ))
        }
    };
    Ok(estimate)
}

#[derive(serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct SimulateConfig {
    scenario: String,
    #[serde(default)]
    config: RunConfig,
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Failure> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| fail(EXIT_VALIDATION, format!("{}: {e}", args.config.display())))?;
    let mut sim: SimulateConfig =
        serde_json::from_str(&text).map_err(|e| fail(EXIT_VALIDATION, format!("config: {e}")))?;
    if let Some(seed) = args.seed {
        sim.config.seed = seed;
    }
    eprintln!("seed: {}", sim.config.seed);
    sim.config.validate()?;

    eprintln!("running scenario {} ...", sim.scenario);
    let out = run_scenario(&sim.scenario, &sim.config)?;
    match &args.out {
        Some(path) => {
            out.table.write_csv(path)?;
            let meta_path = args
                .meta
                .clone()
                .unwrap_or_else(|| path.with_extension("meta.json"));
            std::fs::write(&meta_path, serde_json::to_string_pretty(&out.metadata).unwrap())
                .map_err(esslab::Error::from)?;
            eprintln!("wrote {} and {}", path.display(), meta_path.display());
        }
        None => print!("{}", out.table.to_csv_string()),
    }
    Ok(())
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<(), Failure> {
    if args.list {
        for def in registry() {
            println!("{}\t{}", def.id, def.description);
        }
        return Ok(());
    }
    let mut config = RunConfig::default();
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(r) = args.replicates {
        config.replicates = r;
    }
    if let Some(b) = args.bootstrap_count {
        config.bootstrap_count = b;
    }
    if let Some(p) = args.pool_size {
        config.pool_size = p;
    }
    if let Some(n) = args.bayes_n {
        config.bayes_n = n;
    }
    eprintln!("seed: {}", config.seed);
    config.validate()?;

    let ids: Vec<String> = if args.all {
        registry().iter().map(|d| d.id.to_string()).collect()
    } else {
        vec![require(args.id.clone(), "id")?]
    };

    std::fs::create_dir_all(&args.out).map_err(esslab::Error::from)?;
    let mut manifest = Vec::new();
    for id in &ids {
        eprintln!("running scenario {id} ...");
        let out = run_scenario(id, &config)?;
        let csv_path = args.out.join(format!("{id}.csv"));
        let meta_path = args.out.join(format!("{id}.meta.json"));
        out.table.write_csv(&csv_path)?;
        std::fs::write(&meta_path, serde_json::to_string_pretty(&out.metadata).unwrap())
            .map_err(esslab::Error::from)?;
        manifest.push(json!({
            "id": id,
            "csv": csv_path.to_string_lossy(),
            "metadata": meta_path.to_string_lossy(),
            "rows": out.table.rows.len(),
        }));
        eprintln!("wrote {}", csv_path.display());
    }
    if args.all {
        let manifest_path = args.out.join("manifest.json");
        std::fs::write(
            &manifest_path,
            serde_json::to_string_pretty(&json!({ "seed": config.seed, "scenarios": manifest }))
                .unwrap(),
        )
        .map_err(esslab::Error::from)?;
        eprintln!("wrote {}", manifest_path.display());
    }
    Ok(())
}

fn cmd_audit(args: AuditArgs) -> Result<(), Failure> {
    if args.prior_var <= 0.0 {
        return Err(fail(EXIT_VALIDATION, "--prior-var must be > 0"));
    }
    let seed = resolve_seed(args.seed);
    let grid = grid_from(args.n, args.grid_lo, args.grid_hi)?;
    let data = ingest_csv(&args.data)?;
    let request = AuditRequest {
        response_column: args.response.clone(),
        covariate_column: args.covariate.clone(),
        prior: SlopePrior::new(args.prior_mean, args.prior_var),
        bayes_n: args.n,
        config: RunConfig {
            bootstrap_count: args.bootstrap_count,
            seed,
            grid: Some(grid),
            ..RunConfig::default()
        },
        direction: args.direction.into(),
    };
    let report = prior_audit(&data, &request)?;
    let at_boundary = report.estimate.at_boundary;
    print_json(&json!({ "seed": seed, "report": report }))?;
    if at_boundary {
        return Err(fail(EXIT_BOUNDARY, "continuous minimizer outside the search grid"));
    }
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<(), Failure> {
    if args.rows < 2 {
        return Err(fail(EXIT_VALIDATION, "--rows must be >= 2"));
    }
    if args.allele_freq <= 0.0 || args.allele_freq >= 1.0 {
        return Err(fail(EXIT_VALIDATION, "--allele-freq must lie in (0,1)"));
    }
    if args.noise_sd <= 0.0 {
        return Err(fail(EXIT_VALIDATION, "--noise-sd must be > 0"));
    }
    let seed = resolve_seed(args.seed);
    let data = synth_eqtl(&EqtlConfig {
        rows: args.rows,
        allele_freq: args.allele_freq,
        beta: args.beta,
        noise_sd: args.noise_sd,
        seed,
        pin_slope: !args.no_pin_slope,
    });
    match &args.out {
        Some(path) => {
            std::fs::write(path, data.to_csv_string()).map_err(esslab::Error::from)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{}", data.to_csv_string()),
    }
    Ok(())
}
