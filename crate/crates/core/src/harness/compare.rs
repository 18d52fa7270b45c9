use serde::{Deserialize, Serialize};

use super::run::{Checkpoint, RunSummary};
use crate::error::{Error, Result};
use crate::ode::Trajectory;
use crate::strategy::Stage;

/// Largest deviation per trajectory label between checkpoints and the ODE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupNorm {
    pub labels: Vec<String>,
    pub deviation: Vec<f64>,
    /// Number of checkpoints compared.
    pub points: usize,
}

impl SupNorm {
    pub fn get(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.deviation[i])
    }

    pub fn max(&self) -> f64 {
        self.deviation.iter().copied().fold(0.0, f64::max)
    }
}

/// Interpolates the trajectory at every checkpoint of the matching stage that
/// lies inside its time range and reports `sup |empirical - predicted|` per
/// label.
///
/// Trajectories with `l1`/`l2` labels pair with randomized-stage checkpoints,
/// those with `r` or `c_*` labels with greedy-stage checkpoints, anything else
/// with every checkpoint.
pub fn compare_to_ode(summary: &RunSummary, trajectory: &Trajectory) -> Result<SupNorm> {
    let labels = &trajectory.labels;
    let has = |p: &dyn Fn(&str) -> bool| labels.iter().any(|l| p(l));
    let randomized = has(&|l| l == "l1" || l == "l2");
    let greedy = has(&|l| l == "r" || l.starts_with("c_"));
    if randomized && greedy {
        return Err(Error::InvalidConfig(
            "trajectory mixes randomized and greedy variables".into(),
        ));
    }
    let stage_ok = |c: &Checkpoint| {
        if randomized {
            c.stage == Stage::Randomized
        } else if greedy {
            c.stage == Stage::Greedy
        } else {
            true
        }
    };
    let (s_lo, s_hi) = match (trajectory.samples.first(), trajectory.samples.last()) {
        (Some(a), Some(b)) => (a.0, b.0),
        _ => return Err(Error::InvalidConfig("empty trajectory".into())),
    };
    let mut deviation = vec![0.0f64; labels.len()];
    let mut points = 0;
    for c in summary
        .checkpoints
        .iter()
        .filter(|c| stage_ok(c) && c.s >= s_lo && c.s <= s_hi)
    {
        for (k, label) in labels.iter().enumerate() {
            let got = c.observable(label).ok_or_else(|| {
                Error::InvalidConfig(format!("checkpoints have no observable {label:?}"))
            })?;
            deviation[k] = deviation[k].max((got - trajectory.interpolate(c.s, k)).abs());
        }
        points += 1;
    }
    if points == 0 {
        return Err(Error::InvalidConfig(format!(
            "no {} checkpoint of the {} run falls inside the trajectory",
            if randomized {
                "randomized-stage"
            } else if greedy {
                "greedy-stage"
            } else {
                ""
            },
            summary.config.strategy
        )));
    }
    Ok(SupNorm {
        labels: labels.clone(),
        deviation,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run, RunConfig};
    use crate::ode::ExitReason;
    use crate::strategy::StrategyKind;

    fn constant(label: &str, value: f64, s_max: f64) -> Trajectory {
        Trajectory {
            labels: vec![label.into()],
            samples: vec![(0.0, vec![value]), (s_max, vec![value])],
            exit_s: s_max,
            exit_state: vec![value],
            exit_reason: ExitReason::Horizon,
        }
    }

    #[test]
    fn constant_system_has_zero_deviation() {
        let mut cfg = RunConfig::new(300, 1, StrategyKind::UniformBaseline);
        cfg.baseline_steps_per_n = 1.0;
        let s = run(&cfg).unwrap();
        let norm = compare_to_ode(&s, &constant("x", 0.0, 10.0)).unwrap();
        assert_eq!(norm.deviation, vec![0.0]);
        assert_eq!(norm.points, s.checkpoints.len());
    }

    #[test]
    fn greedy_trajectory_needs_greedy_checkpoints() {
        let cfg = RunConfig::new(300, 1, StrategyKind::FullyRandomized);
        let s = run(&cfg).unwrap();
        assert!(compare_to_ode(&s, &constant("r", 0.0, 10.0)).is_err());
    }
}
