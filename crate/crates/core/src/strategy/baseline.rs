use crate::engine::{ProcessState, StepOutcome};

/// Draws a square and passes it with a uniform circle. Used to sample
/// strategy-independent histories.
pub fn uniform_baseline_step(state: &mut ProcessState) -> StepOutcome {
    let u = state.draw_square();
    let v = state.draw_any();
    state.pass(u, v)
}
