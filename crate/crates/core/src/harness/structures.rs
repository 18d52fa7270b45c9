use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::{ColorMode, ProcessState};
use crate::error::{Error, Result};
use crate::lowerbound::{closed_form, count_structures, HistoryLog, Structure, StructureCounts};
use crate::strategy::uniform_baseline_step;

/// Replicated structure counts of uniform-baseline histories against their
/// limiting densities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub n: usize,
    pub t_over_n: f64,
    pub replicas: Vec<StructureCounts>,
    pub rows: Vec<StructureRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureRow {
    pub structure: Structure,
    /// Mean count divided by `n`.
    pub mean: f64,
    /// Standard error of `mean`.
    pub std_err: f64,
    pub closed_form: f64,
}

impl StructureRow {
    /// `|mean - closed_form|` in standard errors.
    pub fn z_score(&self) -> f64 {
        (self.mean - self.closed_form).abs() / self.std_err
    }
}

/// Seeds `seed, seed + 1, ...`; each replica runs `t_over_n * n` uniform
/// steps and counts its structures.
pub fn structure_report(
    n: usize,
    t_over_n: f64,
    replicas: usize,
    seed: u64,
) -> Result<StructureReport> {
    if replicas == 0 {
        return Err(Error::InvalidConfig(
            "at least one replica is needed".into(),
        ));
    }
    if !(t_over_n >= 0.0) || !t_over_n.is_finite() {
        return Err(Error::InvalidConfig(format!("t/n = {t_over_n}")));
    }
    let steps = (t_over_n * n as f64).round() as u64;
    let counts: Vec<StructureCounts> = (0..replicas)
        .into_par_iter()
        .map(|i| baseline_counts(n, seed.wrapping_add(i as u64), steps))
        .collect::<Result<_>>()?;
    let nf = n as f64;
    let rows = Structure::ALL
        .iter()
        .map(|&w| {
            let vals: Vec<f64> = counts.iter().map(|c| pick(c, w) as f64 / nf).collect();
            let k = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / k;
            let var = if vals.len() > 1 {
                vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)
            } else {
                0.0
            };
            StructureRow {
                structure: w,
                mean,
                std_err: (var / k).sqrt(),
                closed_form: closed_form(w, t_over_n),
            }
        })
        .collect();
    Ok(StructureReport {
        n,
        t_over_n,
        replicas: counts,
        rows,
    })
}

fn baseline_counts(n: usize, seed: u64, t: u64) -> Result<StructureCounts> {
    let mut state = ProcessState::new(n, seed, ColorMode::Randomized)?;
    for _ in 0..t {
        uniform_baseline_step(&mut state);
    }
    Ok(count_structures(&HistoryLog::from_arcs(n, state.arcs(), t)))
}

fn pick(c: &StructureCounts, w: Structure) -> u64 {
    match w {
        Structure::Z => c.z,
        Structure::W1 => c.w1,
        Structure::W2 => c.w2,
        Structure::T1 => c.t1,
        Structure::T2 => c.t2,
    }
}
