use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::engine::{is_hamiltonian_cycle, Color, ColorMode, ProcessState};
use crate::error::{Error, Result};
use crate::strategy::{
    initial_mode, run_strategy, uniform_baseline_step, CutoffRule, Stage, StageReport,
    StrategyConfig, StrategyKind,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub seed: u64,
    pub strategy: StrategyKind,
    /// Number of degree-greedy phases.
    #[serde(rename = "N")]
    pub n_phases: usize,
    /// Steps between checkpoints; `None` means `max(1, n / 1000)`.
    pub record_every: Option<u64>,
    pub stage2_cutoff: CutoffRule,
    pub safety_multiplier: f64,
    /// Length of a uniform-baseline run, in units of `n`.
    pub baseline_steps_per_n: f64,
    /// Where the CLI writes the summary; ignored by [`run`].
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(n: usize, seed: u64, strategy: StrategyKind) -> Self {
        let defaults = StrategyConfig::default();
        RunConfig {
            n,
            seed,
            strategy,
            n_phases: defaults.n_phases,
            record_every: None,
            stage2_cutoff: defaults.stage2_cutoff,
            safety_multiplier: defaults.safety_multiplier,
            baseline_steps_per_n: 1.0,
            out: None,
        }
    }

    pub fn with_phases(mut self, n_phases: usize) -> Self {
        self.n_phases = n_phases;
        self
    }

    pub fn record_every(&self) -> u64 {
        self.record_every
            .unwrap_or_else(|| (self.n as u64 / 1000).max(1))
    }

    /// The same configuration with every default written out.
    pub fn effective(&self) -> Self {
        RunConfig {
            record_every: Some(self.record_every()),
            ..self.clone()
        }
    }

    pub fn strategy_config(&self) -> StrategyConfig {
        StrategyConfig {
            n_phases: self.n_phases,
            stage2_cutoff: self.stage2_cutoff,
            safety_multiplier: self.safety_multiplier,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::InvalidConfig(format!("n = {} is below 3", self.n)));
        }
        if self.record_every == Some(0) {
            return Err(Error::InvalidConfig(
                "record_every must be at least 1".into(),
            ));
        }
        if !(self.baseline_steps_per_n >= 0.0) || !self.baseline_steps_per_n.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "baseline length {} is not a non-negative number",
                self.baseline_steps_per_n
            )));
        }
        self.strategy_config().validate()
    }
}

/// Scaled observables after `t` steps. In greedy stages `l1` and `l2` are 0
/// and `b`, `r`, `m`, `types` are filled; otherwise the reverse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub t: u64,
    pub s: f64,
    pub x: f64,
    pub l1: f64,
    pub l2: f64,
    pub b: f64,
    pub r: f64,
    pub m: f64,
    pub stage: Stage,
    /// `(k1, k2, C_{k1,k2} / n)` for every non-empty type.
    pub types: Vec<(u32, u32, f64)>,
}

impl Checkpoint {
    pub fn of(state: &ProcessState, stage: Stage) -> Self {
        let n = state.n() as f64;
        let c = state.colors();
        let frac = |col: Color| c.count(col) as f64 / n;
        let types = state
            .greedy()
            .map(|book| {
                book.type_counts()
                    .into_iter()
                    .filter(|&(_, _, k)| k > 0)
                    .map(|(a, b, k)| (a, b, k as f64 / n))
                    .collect()
            })
            .unwrap_or_default();
        Checkpoint {
            t: state.step(),
            s: state.step() as f64 / n,
            x: state.path().len() as f64 / n,
            l1: frac(Color::OneRed),
            l2: frac(Color::TwoRed),
            b: frac(Color::Blue),
            r: frac(Color::Red),
            m: frac(Color::Magenta),
            stage,
            types,
        }
    }

    /// Looks up an observable by its ODE label (`x`, `l1`, `l2`, `r`, or
    /// `c_{k1}_{k2}`).
    pub fn observable(&self, label: &str) -> Option<f64> {
        match label {
            "x" => Some(self.x),
            "l1" => Some(self.l1),
            "l2" => Some(self.l2),
            "r" => Some(self.r),
            "b" => Some(self.b),
            "m" => Some(self.m),
            _ => {
                let rest = label.strip_prefix("c_")?;
                let (a, b) = rest.split_once('_')?;
                let (a, b): (u32, u32) = (a.parse().ok()?, b.parse().ok()?);
                Some(
                    self.types
                        .iter()
                        .find(|&&(k1, k2, _)| (k1, k2) == (a, b))
                        .map_or(0.0, |&(_, _, c)| c),
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub config: RunConfig,
    pub total_steps: u64,
    pub steps_per_n: f64,
    /// End steps of the greedy phases, `tau[0] = 0`.
    pub tau: Vec<u64>,
    pub stages: StageReport,
    pub checkpoints: Vec<Checkpoint>,
    /// Whether the used arcs form a Hamiltonian cycle, checked from the arc
    /// list alone.
    pub hamiltonian: bool,
    pub unsaturated: usize,
}

/// A run that stopped with an error; `partial` holds what was recorded up to
/// that point when the run got that far.
#[derive(Debug)]
pub struct RunFailure {
    pub error: Error,
    pub partial: Option<Box<RunSummary>>,
}

impl std::fmt::Display for RunFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.error.fmt(f)
    }
}

impl std::error::Error for RunFailure {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

impl From<Error> for RunFailure {
    fn from(error: Error) -> Self {
        RunFailure {
            error,
            partial: None,
        }
    }
}

/// Executes one configured run, recording a checkpoint at step 0, every
/// `record_every` steps, and at the last step.
pub fn run(config: &RunConfig) -> std::result::Result<RunSummary, RunFailure> {
    config.validate()?;
    let config = config.effective();
    let every = config.record_every();
    let strategy = config.strategy_config();
    let mode = match config.strategy {
        StrategyKind::UniformBaseline => ColorMode::Randomized,
        kind => initial_mode(kind, &strategy),
    };
    let mut state = ProcessState::new(config.n, config.seed, mode)?;
    let mut report = StageReport::default();
    let first_stage = match config.strategy {
        StrategyKind::UniformBaseline => Stage::Baseline,
        _ if mode == ColorMode::Greedy => Stage::Greedy,
        _ => Stage::Randomized,
    };
    let mut checkpoints = vec![Checkpoint::of(&state, first_stage)];
    let mut last_stage = first_stage;
    let result = {
        let mut observe = |s: &ProcessState, stage: Stage| {
            last_stage = stage;
            if s.step() % every == 0 {
                checkpoints.push(Checkpoint::of(s, stage));
            }
        };
        match config.strategy {
            StrategyKind::UniformBaseline => {
                let steps = (config.baseline_steps_per_n * config.n as f64).round() as u64;
                for _ in 0..steps {
                    uniform_baseline_step(&mut state);
                    observe(&state, Stage::Baseline);
                }
                Ok(())
            }
            kind => run_strategy(kind, &strategy, &mut state, &mut report, &mut observe),
        }
    };
    if checkpoints.last().map(|c| c.t) != Some(state.step()) {
        checkpoints.push(Checkpoint::of(&state, last_stage));
    }
    let hamiltonian = state.is_closed() && is_hamiltonian_cycle(state.arcs(), state.n()).is_some();
    let summary = RunSummary {
        total_steps: state.step(),
        steps_per_n: state.step() as f64 / config.n as f64,
        tau: report.tau.clone(),
        stages: report,
        checkpoints,
        hamiltonian,
        unsaturated: state.unsaturated_count(),
        config,
    };
    match result {
        Ok(()) => Ok(summary),
        Err(error) => Err(RunFailure {
            error,
            partial: Some(Box::new(summary)),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_cadence() {
        assert_eq!(
            RunConfig::new(100_000, 0, StrategyKind::ThreeStage).record_every(),
            100
        );
        assert_eq!(
            RunConfig::new(500, 0, StrategyKind::ThreeStage).record_every(),
            1
        );
    }

    #[test]
    fn three_stage_run_is_hamiltonian_and_repeatable() {
        let cfg = RunConfig::new(1000, 1, StrategyKind::ThreeStage).with_phases(0);
        let a = run(&cfg).unwrap();
        assert!(a.hamiltonian);
        assert!(a.checkpoints.windows(2).all(|w| w[0].t < w[1].t));
        assert_eq!(a.checkpoints.last().unwrap().t, a.total_steps);
        let b = run(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn baseline_runs_requested_length() {
        let mut cfg = RunConfig::new(1000, 3, StrategyKind::UniformBaseline);
        cfg.baseline_steps_per_n = 0.5;
        let s = run(&cfg).unwrap();
        assert_eq!(s.total_steps, 500);
        assert!(!s.hamiltonian);
        assert!(s.checkpoints.iter().all(|c| c.x == 0.0));
    }

    #[test]
    fn invalid_config() {
        let mut cfg = RunConfig::new(2, 0, StrategyKind::ThreeStage);
        assert!(run(&cfg).unwrap_err().partial.is_none());
        cfg.n = 100;
        cfg.record_every = Some(0);
        assert!(matches!(
            run(&cfg).unwrap_err().error,
            Error::InvalidConfig(_)
        ));
    }

    #[test]
    fn observable_lookup() {
        let c = Checkpoint {
            t: 1,
            s: 0.1,
            x: 0.2,
            l1: 0.0,
            l2: 0.0,
            b: 0.0,
            r: 0.01,
            m: 0.0,
            stage: Stage::Greedy,
            types: vec![(1, 0, 0.3)],
        };
        assert_eq!(c.observable("c_1_0"), Some(0.3));
        assert_eq!(c.observable("c_0_1"), Some(0.0));
        assert_eq!(c.observable("r"), Some(0.01));
        assert_eq!(c.observable("y"), None);
    }
}
