//! Scenario registry, result tables, the prior-audit pipeline, and the
//! synthetic data generator backing it.

pub mod audit;
pub mod scenario;
pub mod synth;
pub mod table;

pub use audit::{ingest_csv, prior_audit, AuditReport, AuditRequest};
pub use scenario::{
    registry, run_scenario, BetaOneBoot, BetaTwoBoot, LinRegGroup2Boot, NormalBoot, ScenarioDef,
    ScenarioOutput,
};
pub use synth::{synth_eqtl, DataSet, EqtlConfig};
pub use table::{round_sig, ResultTable};
