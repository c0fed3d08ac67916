//! Brute-force oracle: exact-increment random-walk skeletons of the stable
//! process, first-passage event simulation and the comparison machinery
//! that turns closed-form values and Monte Carlo estimates into
//! verification reports.
//!
//! Determinism contract: every path owns an independent counter-based RNG
//! stream keyed by (seed, path index), and reductions run in path order, so
//! identical configurations give identical records regardless of the worker
//! count.

mod events;
mod report;
mod sampler;

pub use events::{simulate_event, EventRecord, Scenario, SimConfig};
pub use report::{compare_deterministic, compare_distribution, compare_scalar, VerificationReport};
pub use sampler::{sample_increment, sample_increment_vec, IncrementSampler, UnitStableSampler};

use crate::error::Result;
use crate::stats::{EmpiricalDistribution, ScalarStats};

/// Summarise event records: sorted non-censored event values plus scalar
/// statistics, with the censored count carried along.
pub fn estimate(records: &[EventRecord]) -> Result<(EmpiricalDistribution, ScalarStats)> {
    let values: Vec<f64> = records.iter().filter(|r| !r.censored).map(|r| r.value).collect();
    let censored = records.iter().filter(|r| r.censored).count();
    let emp = EmpiricalDistribution::from_samples(values.clone(), censored)?;
    let stats = crate::stats::scalar_stats(&values)?;
    Ok((emp, stats))
}
