//! Seeded generation, falsification searches, and theorem-keyed property
//! suites.
//!
//! Trials are independent: trial i derives its own generator from the
//! master seed, so any sharding of trials across workers produces the
//! same verdict, the same worst metric, and the same witness as a serial
//! run. Reduction is max with ties broken towards the smaller trial index.

pub mod falsify;
pub mod gen;
pub mod rng;
pub mod suites;

pub use falsify::{falsify_triangle, replay_triangle, structured_pairs};
pub use rng::Rng;
pub use suites::{run_suite, suite_ids, SuiteConfig};

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{Error, Result};

/// One evaluated trial: its index, metric, and optional witness payload.
#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub index: u64,
    pub metric: f64,
    pub witness: Option<Value>,
}

impl Candidate {
    pub fn new(index: u64, metric: f64, witness: Option<Value>) -> Self {
        Candidate { index, metric, witness }
    }

    /// Larger metric wins; NaN counts as worst of all; ties go to the
    /// smaller index so reductions are order-independent.
    pub fn better(a: Option<Candidate>, b: Candidate) -> Option<Candidate> {
        match a {
            None => Some(b),
            Some(a) => {
                let b_wins = b.metric.is_nan() && !a.metric.is_nan()
                    || b.metric > a.metric
                    || (b.metric == a.metric && b.index < a.index);
                Some(if b_wins { b } else { a })
            }
        }
    }
}

/// Runs `eval` over trial indices 0..count (in parallel unless
/// `workers == Some(1)`) and keeps the candidate with the largest metric.
/// `eval` may return `Ok(None)` to skip a trial.
pub(crate) fn max_over_indexed<F>(
    workers: Option<usize>,
    count: u64,
    eval: F,
) -> Result<Option<Candidate>>
where
    F: Fn(u64) -> Result<Option<(f64, Option<Value>)>> + Sync + Send,
{
    let body = || {
        (0..count)
            .into_par_iter()
            .map(|i| eval(i).map(|o| o.map(|(metric, witness)| Candidate::new(i, metric, witness))))
            .try_reduce(
                || None,
                |a, b| {
                    Ok(match (a, b) {
                        (acc, None) => acc,
                        (acc, Some(c)) => Candidate::better(acc, c),
                    })
                },
            )
    };
    match workers {
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .map_err(|e| Error::Invalid(format!("cannot build worker pool: {e}")))?;
            pool.install(body)
        }
        None => body(),
    }
}
