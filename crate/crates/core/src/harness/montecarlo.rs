use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::run::{run, RunConfig, RunSummary};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicaOutcome {
    pub index: usize,
    pub seed: u64,
    pub summary: Option<RunSummary>,
    pub error: Option<String>,
}

/// Mean observables over the replicas that recorded a checkpoint at step `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointMean {
    pub t: u64,
    pub s: f64,
    pub x: f64,
    pub l1: f64,
    pub l2: f64,
    pub r: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub replicas: Vec<ReplicaOutcome>,
    pub succeeded: usize,
    pub mean_steps_per_n: f64,
    /// Sample standard deviation; 0 for a single replica.
    pub sd_steps_per_n: f64,
    pub all_hamiltonian: bool,
    pub checkpoint_means: Vec<CheckpointMean>,
}

/// Worker count from `SEMIHAM_THREADS`, or rayon's default when unset.
pub fn thread_count() -> Option<usize> {
    std::env::var("SEMIHAM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&k| k > 0)
}

/// Runs replicas with seeds `seed, seed + 1, ...` concurrently and folds the
/// results in replica order.
pub fn monte_carlo(config: &RunConfig, replicas: usize) -> Result<MonteCarloReport> {
    if replicas == 0 {
        return Err(Error::InvalidConfig(
            "at least one replica is needed".into(),
        ));
    }
    config.validate()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = thread_count() {
        builder = builder.num_threads(k);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let outcomes: Vec<ReplicaOutcome> = pool.install(|| {
        (0..replicas)
            .into_par_iter()
            .map(|index| {
                let seed = config.seed.wrapping_add(index as u64);
                let cfg = RunConfig {
                    seed,
                    ..config.clone()
                };
                match run(&cfg) {
                    Ok(summary) => ReplicaOutcome {
                        index,
                        seed,
                        summary: Some(summary),
                        error: None,
                    },
                    Err(f) => ReplicaOutcome {
                        index,
                        seed,
                        summary: None,
                        error: Some(f.to_string()),
                    },
                }
            })
            .collect()
    });
    Ok(aggregate(outcomes))
}

fn aggregate(mut replicas: Vec<ReplicaOutcome>) -> MonteCarloReport {
    replicas.sort_by_key(|r| r.index);
    let done: Vec<&RunSummary> = replicas.iter().filter_map(|r| r.summary.as_ref()).collect();
    let k = done.len();
    let mean = if k == 0 {
        f64::NAN
    } else {
        done.iter().map(|s| s.steps_per_n).sum::<f64>() / k as f64
    };
    let sd = if k < 2 {
        0.0
    } else {
        (done
            .iter()
            .map(|s| (s.steps_per_n - mean).powi(2))
            .sum::<f64>()
            / (k - 1) as f64)
            .sqrt()
    };
    let mut by_t: BTreeMap<u64, (f64, f64, f64, f64, f64, usize)> = BTreeMap::new();
    for s in &done {
        for c in &s.checkpoints {
            let e = by_t.entry(c.t).or_default();
            e.0 += c.s;
            e.1 += c.x;
            e.2 += c.l1;
            e.3 += c.l2;
            e.4 += c.r;
            e.5 += 1;
        }
    }
    let checkpoint_means = by_t
        .into_iter()
        .map(|(t, (s, x, l1, l2, r, count))| {
            let c = count as f64;
            CheckpointMean {
                t,
                s: s / c,
                x: x / c,
                l1: l1 / c,
                l2: l2 / c,
                r: r / c,
                count,
            }
        })
        .collect();
    MonteCarloReport {
        succeeded: k,
        mean_steps_per_n: mean,
        sd_steps_per_n: sd,
        all_hamiltonian: k == replicas.len() && done.iter().all(|s| s.hamiltonian),
        checkpoint_means,
        replicas,
    }
}
