//! Structured result of a property run.

use serde::{Deserialize, Serialize};

/// Outcome of a property suite, falsification search, or single check.
///
/// A failing report always embeds a replayable witness: the serialized
/// inputs that produced the worst ratio or the violation, so the run can
/// be reproduced bit-for-bit from the report alone.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    /// Suite or check identifier.
    pub suite: String,
    /// Number of trials executed (structured candidates included).
    pub trials: u64,
    /// Whether every checked inequality/identity held.
    pub passed: bool,
    /// Worst ratio or slack observed, suite-specific.
    pub worst: f64,
    /// Serialized inputs achieving `worst` (always present on failure).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// Master seed of the run.
    pub seed: u64,
    /// Wall-clock duration of the run in seconds. Excluded from JSON so
    /// identical invocations with identical seeds emit identical bytes.
    #[serde(skip)]
    pub elapsed_secs: f64,
}

impl Report {
    pub fn new(suite: impl Into<String>, seed: u64) -> Self {
        Report {
            suite: suite.into(),
            trials: 0,
            passed: true,
            worst: 0.0,
            witness: None,
            seed,
            elapsed_secs: 0.0,
        }
    }
}
