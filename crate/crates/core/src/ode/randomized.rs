//! Scaled dynamics of the fully randomized strategy: path fraction `x` and the
//! one-red / two-red fractions `l1`, `l2`.

use super::integrate::{ExitReason, OdeSystem};
use crate::error::{Error, Result};

/// Right-hand side at `(x, l1, l2)`; the system is autonomous so `s` is
/// unused. Fails when `x >= 1`, where the `1 - x` denominators vanish.
///
/// The `l1` term carries the coefficient 2 from the one-step expectation
/// (landing next to a one-red vertex happens with probability `2 L1 / n`).
pub fn rhs_randomized(s: f64, x: f64, l1: f64, l2: f64) -> Result<[f64; 3]> {
    if x >= 1.0 {
        return Err(Error::Domain {
            s,
            reason: format!("x = {x} >= 1"),
        });
    }
    Ok(randomized_unchecked(x, l1, l2))
}

#[inline]
fn randomized_unchecked(x: f64, l1: f64, l2: f64) -> [f64; 3] {
    let u = 1.0 - x;
    let l = l1 + l2;
    let a = (2.0 * l2 - l1) / u;
    let w = 2.0 * l2 / u;
    let dx = 1.0 - x + 2.0 * l;
    let dl1 = x - 5.0 * l + 2.0 * l1 * (a - 1.0) + 2.0 * l2 * (1.0 + a) - l1 + (2.0 * l2 - l1);
    let dl2 = l1 - 2.0 * l2 - 2.0 * l1 * w - 2.0 * l2 * (1.0 + w);
    [dx, dl1, dl2]
}

/// The randomized system on `{s < 3, x < 1 - margin, |l1|, |l2| < 2}`.
#[derive(Debug, Clone, Copy)]
pub struct RandomizedSystem {
    pub margin: f64,
}

pub const TIME_LIMIT: f64 = 3.0;

impl OdeSystem for RandomizedSystem {
    fn dim(&self) -> usize {
        3
    }

    fn rhs(&self, _s: f64, y: &[f64], dy: &mut [f64]) {
        dy.copy_from_slice(&randomized_unchecked(y[0], y[1], y[2]));
    }

    fn exit(&self, s: f64, y: &[f64]) -> Option<ExitReason> {
        if y[0] >= 1.0 - self.margin {
            Some(ExitReason::Saturated)
        } else if s >= TIME_LIMIT {
            Some(ExitReason::TimeLimit)
        } else if y[0] <= -1.0 || y[1].abs() >= 2.0 || y[2].abs() >= 2.0 {
            Some(ExitReason::OutOfBox)
        } else {
            None
        }
    }

    fn labels(&self) -> Vec<String> {
        vec!["x".into(), "l1".into(), "l2".into()]
    }
}
