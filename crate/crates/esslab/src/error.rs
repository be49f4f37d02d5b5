use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration: field `{field}`: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("enumeration cap exceeded: n={n} is above the exact-enumeration cap {cap}")]
    EnumerationCapExceeded { n: usize, cap: usize },

    #[error("degenerate variance: both sample proportions are exactly 0 or 1")]
    DegenerateVariance,

    #[error("all {draws} draws hit the degeneracy clamp; estimate is meaningless")]
    AllDrawsDegenerate { draws: usize },

    #[error("minimizer at grid boundary: continuous minimizer {continuous} lies outside [{lo}, {hi}]")]
    MinimizerAtBoundary { continuous: f64, lo: usize, hi: usize },

    #[error("unsupported prior/truth family combination: {0}")]
    UnsupportedFamily(String),

    #[error("unknown scenario id `{0}`")]
    UnknownScenario(String),

    #[error("column `{0}` missing from data table")]
    ColumnMissing(String),

    #[error("degenerate design: covariate column is constant")]
    DegenerateDesign,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
