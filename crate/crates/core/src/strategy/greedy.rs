use serde::{Deserialize, Serialize};

use crate::engine::{CaseTag, Hue, ProcessState, StepOutcome, VertexId};
use crate::error::Result;

/// One step of the degree-greedy strategy for the square `u`. The state must
/// be in greedy colour mode.
pub fn degree_greedy_step(state: &mut ProcessState, u: VertexId) -> Result<StepOutcome> {
    match state.classify_square(u) {
        CaseTag::Unsaturated => state.extend_path(u),
        CaseTag::AdjacentToColored(x) => state.augment_path(u, x),
        CaseTag::Permissible | CaseTag::ColoredRed => match state.sample_min_blue() {
            Some(v) => state.color_arc(u, v, Hue::Blue),
            None => pass_uniform(state, u),
        },
        CaseTag::ColoredBlue => match state.sample_unsaturated() {
            Some(v) => state.color_arc(u, v, Hue::Red),
            None => pass_uniform(state, u),
        },
        CaseTag::ColoredOneRed | CaseTag::Pass => pass_uniform(state, u),
    }
}

fn pass_uniform(state: &mut ProcessState, u: VertexId) -> Result<StepOutcome> {
    let v = state.draw_any();
    Ok(state.pass(u, v))
}

/// Phase bookkeeping of the degree-greedy stage. Phase `q` runs while the
/// minimum blue degree among unsaturated vertices is `q - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTracker {
    pub q: usize,
    /// `tau[j]` is the step at which phase `j` ended; `tau[0] = 0`.
    pub tau: Vec<u64>,
    /// Number of unsaturated vertices of blue degree `q - 1`.
    pub d_current: usize,
}

impl Default for PhaseTracker {
    fn default() -> Self {
        PhaseTracker {
            q: 1,
            tau: vec![0],
            d_current: 0,
        }
    }
}

impl PhaseTracker {
    /// Index of the last completed phase.
    pub fn completed(&self) -> usize {
        self.tau.len() - 1
    }
}

/// Records every phase boundary passed at the current step. Blue degrees
/// only grow, so several phases can end on the same step only in degenerate
/// states. Does nothing once no unsaturated vertex remains.
pub fn advance_phase_if_needed(state: &mut ProcessState, tracker: &mut PhaseTracker) {
    let t = state.step();
    let Some(book) = state.greedy_mut() else {
        return;
    };
    let Some(min) = book.min_degree() else {
        tracker.d_current = 0;
        return;
    };
    while min >= tracker.q {
        tracker.tau.push(t);
        tracker.q += 1;
    }
    tracker.d_current = book.degree_count(tracker.q - 1);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{audit, Color, ColorMode};

    fn run(n: usize, steps: usize, seed: u64) -> (ProcessState, PhaseTracker) {
        let mut s = ProcessState::new(n, seed, ColorMode::Greedy).unwrap();
        let mut tr = PhaseTracker::default();
        for _ in 0..steps {
            let u = s.draw_square();
            degree_greedy_step(&mut s, u).unwrap();
            advance_phase_if_needed(&mut s, &mut tr);
        }
        (s, tr)
    }

    #[test]
    fn initial_tracker() {
        let tr = PhaseTracker::default();
        assert_eq!((tr.q, tr.tau.clone()), (1, vec![0]));
    }

    #[test]
    fn phases_advance_and_audit_clean() {
        let (s, tr) = run(2000, 4000, 11);
        assert!(audit(&s).is_empty(), "{:?}", audit(&s));
        assert!(tr.q >= 2, "phase {}", tr.q);
        assert!(tr.tau.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn minimum_bucket_is_phase_degree() {
        let (mut s, tr) = run(1500, 2500, 5);
        let book = s.greedy_mut().unwrap();
        let min = book.min_degree().unwrap();
        assert_eq!(min, tr.q - 1);
        assert_eq!(tr.d_current, book.degree_count(min));
    }

    #[test]
    fn magenta_square_passes() {
        let (mut s, _) = run(1000, 1500, 2);
        let m = (1..=1000).map(VertexId::new).find(|&v| {
            s.colors().color(v) == Color::Magenta && s.classify_square(v) == CaseTag::Pass
        });
        if let Some(v) = m {
            let out = degree_greedy_step(&mut s, v).unwrap();
            assert!(matches!(out, StepOutcome::Pass { .. }));
        }
    }
}
