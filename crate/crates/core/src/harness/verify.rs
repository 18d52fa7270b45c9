use serde::{Deserialize, Serialize};

use super::run::RunConfig;
use crate::engine::{audit, is_hamiltonian_cycle, ProcessState};
use crate::error::{Error, Result};
use crate::strategy::{initial_mode, run_strategy, Stage, StageReport, StrategyKind};

/// Outcome of a run audited after every step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub seed: u64,
    pub steps: u64,
    pub hamiltonian: bool,
    /// `(step, message)` for every violated invariant, capped at
    /// [`MAX_REPORTED`] entries.
    pub violations: Vec<(u64, String)>,
    pub violation_count: usize,
    pub error: Option<String>,
}

pub const MAX_REPORTED: usize = 100;

/// Runs `config` and checks, after every step, the full engine audit plus the
/// step-level strategy invariants: the step counter advances by one, the
/// path grows by at most one vertex, the minimum blue degree never
/// decreases, and stages only move forward.
pub fn verify_run(config: &RunConfig) -> Result<VerifyReport> {
    config.validate()?;
    let strategy = config.strategy_config();
    let kind = config.strategy;
    if kind == StrategyKind::UniformBaseline {
        return Err(Error::InvalidConfig(
            "the uniform baseline has nothing to verify".into(),
        ));
    }
    let mut state = ProcessState::new(config.n, config.seed, initial_mode(kind, &strategy))?;
    let mut report = StageReport::default();
    let mut violations = Vec::new();
    let mut count = 0usize;
    let mut push = |t: u64, msg: String, v: &mut Vec<(u64, String)>| {
        count += 1;
        if v.len() < MAX_REPORTED {
            v.push((t, msg));
        }
    };
    let mut prev_step = 0u64;
    let mut prev_len = 0usize;
    let mut prev_min: Option<usize> = None;
    let mut prev_stage: Option<Stage> = None;
    let result = {
        let mut observe = |s: &ProcessState, stage: Stage| {
            let t = s.step();
            for msg in audit(s) {
                push(t, msg, &mut violations);
            }
            if t != prev_step + 1 {
                push(t, format!("step jumped from {prev_step}"), &mut violations);
            }
            let len = s.path().len();
            if len < prev_len || len > prev_len + 1 {
                push(
                    t,
                    format!("path length went from {prev_len} to {len}"),
                    &mut violations,
                );
            }
            if let Some(book) = s.greedy() {
                let min = (0..=book.max_degree()).find(|&d| book.degree_count(d) > 0);
                if let (Some(a), Some(b)) = (prev_min, min) {
                    if b < a {
                        push(
                            t,
                            format!("minimum blue degree fell from {a} to {b}"),
                            &mut violations,
                        );
                    }
                }
                prev_min = min;
            }
            if let Some(p) = prev_stage {
                if stage_rank(stage) < stage_rank(p) {
                    push(
                        t,
                        format!("stage went back from {p:?} to {stage:?}"),
                        &mut violations,
                    );
                }
            }
            prev_stage = Some(stage);
            prev_step = t;
            prev_len = len;
        };
        run_strategy(kind, &strategy, &mut state, &mut report, &mut observe)
    };
    if report.tau.windows(2).any(|w| w[0] > w[1]) {
        push(
            state.step(),
            format!("phase ends out of order: {:?}", report.tau),
            &mut violations,
        );
    }
    let hamiltonian = state.is_closed() && is_hamiltonian_cycle(state.arcs(), state.n()).is_some();
    if matches!(kind, StrategyKind::ThreeStage | StrategyKind::DegreeGreedy)
        && result.is_ok()
        && !hamiltonian
    {
        push(
            state.step(),
            "finished run is not a Hamiltonian cycle".into(),
            &mut violations,
        );
    }
    Ok(VerifyReport {
        n: config.n,
        seed: config.seed,
        steps: state.step(),
        hamiltonian,
        violation_count: count,
        violations,
        error: result.err().map(|e| e.to_string()),
    })
}

fn stage_rank(stage: Stage) -> u8 {
    match stage {
        Stage::Greedy => 0,
        Stage::Randomized => 1,
        Stage::Cleanup => 2,
        Stage::Closing => 3,
        Stage::Baseline => 4,
    }
}
