use crate::engine::{CaseTag, Hue, ProcessState, StepOutcome, VertexId};
use crate::error::Result;

/// One step of the fully randomized strategy for the square `u`. The state
/// must be in randomized colour mode.
///
/// Squares on two-red vertices pass; only permissible and one-red squares
/// colour.
pub fn fully_randomized_step(state: &mut ProcessState, u: VertexId) -> Result<StepOutcome> {
    match state.classify_square(u) {
        CaseTag::Unsaturated => state.extend_path(u),
        CaseTag::AdjacentToColored(x) => state.augment_path(u, x),
        CaseTag::Permissible | CaseTag::ColoredOneRed => match state.sample_unsaturated() {
            Some(v) => state.color_arc(u, v, Hue::Red),
            None => {
                let v = state.draw_any();
                Ok(state.pass(u, v))
            }
        },
        CaseTag::ColoredRed | CaseTag::ColoredBlue | CaseTag::Pass => {
            let v = state.draw_any();
            Ok(state.pass(u, v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{audit, Color, ColorMode};

    #[test]
    fn run_stays_consistent() {
        let mut s = ProcessState::new(300, 7, ColorMode::Randomized).unwrap();
        for t in 0..600 {
            let u = s.draw_square();
            let before = s.path().len();
            let out = fully_randomized_step(&mut s, u).unwrap();
            assert_eq!(s.path().len() - before, usize::from(out.grows_path()));
            if t % 50 == 0 {
                assert_eq!(audit(&s), Vec::<String>::new());
            }
        }
        assert!(s.path().len() > 200);
    }

    #[test]
    fn two_red_square_passes() {
        let mut s = ProcessState::new(400, 3, ColorMode::Randomized).unwrap();
        for _ in 0..400 {
            let u = s.draw_square();
            fully_randomized_step(&mut s, u).unwrap();
        }
        let two_red = (1..=400).map(VertexId::new).find(|&v| {
            s.colors().color(v) == Color::TwoRed && s.classify_square(v) != CaseTag::Unsaturated
        });
        if let Some(v) = two_red {
            if s.classify_square(v) == CaseTag::Pass {
                let out = fully_randomized_step(&mut s, v).unwrap();
                assert!(matches!(out, StepOutcome::Pass { .. }));
            }
        }
    }
}
