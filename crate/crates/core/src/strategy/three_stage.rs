use serde::{Deserialize, Serialize};

use super::{
    advance_phase_if_needed, cleanup_run, degree_greedy_step, fully_randomized_step, CleanupReport,
    Observer, PhaseTracker, Stage, StrategyConfig,
};
use crate::engine::{ColorMode, ProcessState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    /// The randomized stage alone from an empty path, stopped at the cutoff.
    FullyRandomized,
    /// Degree-greedy phases followed directly by clean-up.
    DegreeGreedy,
    /// Greedy phases, the randomized stage, then clean-up.
    ThreeStage,
    /// Uniform circles only; no path is built.
    UniformBaseline,
}

impl StrategyKind {
    pub fn name(&self) -> &'static str {
        match self {
            StrategyKind::FullyRandomized => "fully_randomized",
            StrategyKind::DegreeGreedy => "degree_greedy",
            StrategyKind::ThreeStage => "three_stage",
            StrategyKind::UniformBaseline => "uniform_baseline",
        }
    }
}

impl std::fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for StrategyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            StrategyKind::FullyRandomized,
            StrategyKind::DegreeGreedy,
            StrategyKind::ThreeStage,
            StrategyKind::UniformBaseline,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::InvalidConfig(format!("unknown strategy {s:?}")))
    }
}

/// Per-stage step counts of one run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub greedy_steps: u64,
    pub randomized_steps: u64,
    pub cleanup_steps: u64,
    pub closing_steps: u64,
    /// `tau[q]` is the step at which greedy phase `q` ended; `tau[0] = 0`.
    pub tau: Vec<u64>,
    pub unsaturated_at_cleanup: Option<usize>,
    pub cleanup: Option<CleanupReport>,
}

/// Runs the three stages on a fresh state. Stage 1 is skipped when
/// `n_phases = 0`. The state and report are filled in place so a failed
/// clean-up still leaves the partial run behind.
pub fn run_three_stage(
    config: &StrategyConfig,
    state: &mut ProcessState,
    report: &mut StageReport,
    observer: &mut Observer<'_>,
) -> Result<()> {
    run_strategy(StrategyKind::ThreeStage, config, state, report, observer)
}

/// The colour mode a fresh state needs for `kind`.
pub fn initial_mode(kind: StrategyKind, config: &StrategyConfig) -> ColorMode {
    match kind {
        StrategyKind::DegreeGreedy | StrategyKind::ThreeStage if config.n_phases > 0 => {
            ColorMode::Greedy
        }
        _ => ColorMode::Randomized,
    }
}

pub fn run_strategy(
    kind: StrategyKind,
    config: &StrategyConfig,
    state: &mut ProcessState,
    report: &mut StageReport,
    observer: &mut Observer<'_>,
) -> Result<()> {
    config.validate()?;
    if state.step() != 0 {
        return Err(Error::Precondition(
            "run_strategy needs a fresh state".into(),
        ));
    }
    if state.mode() != initial_mode(kind, config) {
        return Err(Error::Precondition(format!(
            "{kind} with N = {} needs a {:?} state",
            config.n_phases,
            initial_mode(kind, config)
        )));
    }
    let cutoff = config.stage2_cutoff.threshold(state.n());
    match kind {
        StrategyKind::FullyRandomized => {
            randomized_stage(state, cutoff, report, observer)?;
            Ok(())
        }
        StrategyKind::DegreeGreedy => {
            greedy_stage(state, config.n_phases, cutoff, report, observer)?;
            cleanup_stage(state, config, report, observer)
        }
        StrategyKind::ThreeStage => {
            greedy_stage(state, config.n_phases, cutoff, report, observer)?;
            randomized_stage(state, cutoff, report, observer)?;
            cleanup_stage(state, config, report, observer)
        }
        StrategyKind::UniformBaseline => Err(Error::InvalidConfig(
            "the uniform baseline has no stages; drive it step by step".into(),
        )),
    }
}

/// Degree-greedy steps until phase `n_phases` ends or at most `cutoff`
/// vertices are unsaturated.
fn greedy_stage(
    state: &mut ProcessState,
    n_phases: usize,
    cutoff: usize,
    report: &mut StageReport,
    observer: &mut Observer<'_>,
) -> Result<()> {
    let mut tracker = PhaseTracker::default();
    if n_phases > 0 {
        let start = state.step();
        while tracker.completed() < n_phases && state.unsaturated_count() > cutoff {
            let u = state.draw_square();
            degree_greedy_step(state, u)?;
            advance_phase_if_needed(state, &mut tracker);
            observer(state, Stage::Greedy);
        }
        report.greedy_steps = state.step() - start;
    }
    tracker.tau.truncate(n_phases + 1);
    report.tau = tracker.tau;
    state.convert_to_randomized();
    Ok(())
}

fn randomized_stage(
    state: &mut ProcessState,
    cutoff: usize,
    report: &mut StageReport,
    observer: &mut Observer<'_>,
) -> Result<()> {
    let start = state.step();
    while state.unsaturated_count() > cutoff {
        let u = state.draw_square();
        fully_randomized_step(state, u)?;
        observer(state, Stage::Randomized);
    }
    report.randomized_steps = state.step() - start;
    Ok(())
}

fn cleanup_stage(
    state: &mut ProcessState,
    config: &StrategyConfig,
    report: &mut StageReport,
    observer: &mut Observer<'_>,
) -> Result<()> {
    report.unsaturated_at_cleanup = Some(state.unsaturated_count());
    let start = state.step();
    let mut closing_start = None;
    let mut wrapped = |s: &ProcessState, stage: Stage| {
        if stage == Stage::Closing && closing_start.is_none() {
            closing_start = Some(s.step() - 1);
        }
        observer(s, stage)
    };
    let result = cleanup_run(state, config.safety_multiplier, &mut wrapped);
    let end = state.step();
    let closing_from = closing_start.unwrap_or(end);
    report.cleanup_steps = closing_from - start;
    report.closing_steps = end - closing_from;
    report.cleanup = Some(result?);
    Ok(())
}
