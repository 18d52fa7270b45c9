//! The constant `alpha*`: where the randomized system, started from the end of
//! the degree-greedy chain, saturates.

use serde::{Deserialize, Serialize};

use super::greedy::{compute_sigma_chain, ChainOptions, SigmaChain};
use super::integrate::{integrate, ExitReason, IntegrateOptions, Trajectory};
use super::randomized::RandomizedSystem;
use crate::error::Result;

/// Margins swept by default, largest first; the last one is the headline.
pub const DEFAULT_MARGINS: [f64; 3] = [1e-4, 1e-5, 1e-6];

#[derive(Debug, Clone, Copy)]
pub struct AlphaOptions {
    pub step: f64,
    pub floor: f64,
    pub sample_every: f64,
}

impl Default for AlphaOptions {
    fn default() -> Self {
        AlphaOptions {
            step: 1e-5,
            floor: super::greedy::PHASE_FLOOR,
            sample_every: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlphaStar {
    /// Exit time at the smallest margin.
    pub value: f64,
    /// Boundary reached at the smallest margin. `TimeLimit` means the solution
    /// ran to `s = 3` without saturating.
    pub exit_reason: ExitReason,
    /// `(margin, exit_s)` for each margin, in the order given.
    pub sweep: Vec<(f64, f64)>,
    /// Aitken extrapolation of the last three sweep values towards margin 0,
    /// when they converge geometrically.
    pub extrapolated: Option<f64>,
    pub chain: SigmaChain,
    /// Randomized-stage trajectory at the smallest margin.
    pub trajectory: Trajectory,
}

/// Runs the chain for `n_phases` degree-greedy phases, then the randomized
/// system from `(sigma_N, x(sigma_N), 0, 0)` until `x` reaches `1 - margin`,
/// for every margin in `margins` (sorted decreasing by the caller).
pub fn compute_alpha_star(
    n_phases: usize,
    margins: &[f64],
    opts: AlphaOptions,
) -> Result<AlphaStar> {
    let smallest = margins.iter().copied().fold(f64::INFINITY, f64::min);
    let chain = compute_sigma_chain(
        n_phases,
        ChainOptions {
            step: opts.step,
            margin: smallest,
            floor: opts.floor,
            sample_every: opts.sample_every,
        },
    )?;
    let s0 = chain.last_sigma();
    let y0 = [chain.x, 0.0, 0.0];
    let mut sweep = Vec::with_capacity(margins.len());
    let mut last = None;
    for &margin in margins {
        if y0[0] >= 1.0 - margin {
            // Already saturated at this margin when the randomized stage starts.
            sweep.push((margin, s0));
            continue;
        }
        let traj = integrate(
            &RandomizedSystem { margin },
            s0,
            &y0,
            IntegrateOptions {
                step: opts.step,
                s_max: f64::INFINITY,
                sample_every: opts.sample_every,
            },
        )?;
        sweep.push((margin, traj.exit_s));
        if margin == smallest {
            last = Some(traj);
        }
    }
    let trajectory = match last {
        Some(t) => t,
        None => {
            return Err(crate::error::Error::Domain {
                s: s0,
                reason: format!(
                    "x = {} is already within the smallest margin {smallest}",
                    y0[0]
                ),
            })
        }
    };
    let extrapolated = aitken(&sweep);
    Ok(AlphaStar {
        value: trajectory.exit_s,
        exit_reason: trajectory.exit_reason,
        extrapolated,
        sweep,
        chain,
        trajectory,
    })
}

fn aitken(sweep: &[(f64, f64)]) -> Option<f64> {
    let [a, b, c] = match sweep {
        [.., a, b, c] => [a.1, b.1, c.1],
        _ => return None,
    };
    let (d1, d2) = (b - a, c - b);
    let converging = d1 * d2 > 0.0 && d2.abs() < d1.abs();
    converging.then(|| c - d2 * d2 / (d2 - d1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aitken_on_geometric_sequence() {
        let sweep = [(1e-4, 1.0 - 0.5), (1e-5, 1.0 - 0.25), (1e-6, 1.0 - 0.125)];
        assert!((aitken(&sweep).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(aitken(&sweep[1..]), None);
        assert_eq!(aitken(&[(1.0, 1.0), (0.1, 1.0), (0.01, 1.0)]), None);
    }
}
