//! The player: the fully randomized and degree-greedy strategies, the
//! clean-up procedure that finishes a near-spanning path into a Hamiltonian
//! cycle, and the three-stage composite.

mod baseline;
mod cleanup;
mod greedy;
mod randomized;
mod three_stage;

pub use baseline::uniform_baseline_step;
pub use cleanup::{cleanup_run, close_cycle_run, CleanupReport, CleanupSchedule};
pub use greedy::{advance_phase_if_needed, degree_greedy_step, PhaseTracker};
pub use randomized::fully_randomized_step;
pub use three_stage::{initial_mode, run_strategy, run_three_stage, StageReport, StrategyKind};

use serde::{Deserialize, Serialize};

use crate::engine::ProcessState;
use crate::error::{Error, Result};

/// When the fully randomized stage hands over to clean-up, as a target count
/// of unsaturated vertices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule", content = "value")]
pub enum CutoffRule {
    /// `n / ln n`.
    NOverLnN,
    /// `n^{1/2}`.
    SqrtN,
    /// `n^{1/4}`.
    QuarterPowerN,
    /// A fixed count.
    Fixed(usize),
}

impl CutoffRule {
    /// The threshold for `n` vertices, clamped to `[1, n - 1]`.
    pub fn threshold(&self, n: usize) -> usize {
        let nf = n as f64;
        let raw = match *self {
            CutoffRule::NOverLnN => (nf / nf.ln()).floor() as usize,
            CutoffRule::SqrtN => nf.sqrt().floor() as usize,
            CutoffRule::QuarterPowerN => nf.powf(0.25).floor() as usize,
            CutoffRule::Fixed(k) => k,
        };
        raw.clamp(1, n.saturating_sub(1).max(1))
    }
}

impl std::str::FromStr for CutoffRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n_over_ln_n" => Ok(CutoffRule::NOverLnN),
            "sqrt_n" => Ok(CutoffRule::SqrtN),
            "quarter_power_n" => Ok(CutoffRule::QuarterPowerN),
            _ => s
                .parse::<usize>()
                .map(CutoffRule::Fixed)
                .map_err(|_| Error::InvalidConfig(format!("unknown cutoff rule {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyConfig {
    /// Number of degree-greedy phases; 0 skips the greedy stage.
    pub n_phases: usize,
    pub stage2_cutoff: CutoffRule,
    /// Scales every step budget of the clean-up stage.
    pub safety_multiplier: f64,
}

impl Default for StrategyConfig {
    fn default() -> Self {
        StrategyConfig {
            n_phases: 100,
            stage2_cutoff: CutoffRule::Fixed(1),
            safety_multiplier: 20.0,
        }
    }
}

impl StrategyConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.safety_multiplier > 0.0) || !self.safety_multiplier.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "safety multiplier {} must be positive",
                self.safety_multiplier
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Greedy,
    Randomized,
    Cleanup,
    Closing,
    Baseline,
}

/// Called after every step with the state and the stage that made it.
pub type Observer<'a> = dyn FnMut(&ProcessState, Stage) + 'a;
