//! Finishing a near-spanning path: repeated reservoir building and absorption
//! until no unsaturated vertex is left, then closing the Hamiltonian path into
//! a cycle.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Observer, Stage};
use crate::engine::{DegreeBuckets, Hue, ProcessState, Side, VertexId};
use crate::error::{Error, Result};

/// Targets `j_k` and reservoir sizes `m_k` for the absorption rounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanupSchedule {
    /// `j[0]` is the starting count; `j[k]` the target after round `k`.
    pub j: Vec<usize>,
    /// `m[k - 1]` is the reservoir size of round `k`.
    pub m: Vec<usize>,
    /// First round whose target is at most `n^{1/4}`.
    pub tau1: usize,
    /// Number of rounds; `j[tau] = 0`.
    pub tau: usize,
}

impl CleanupSchedule {
    /// Halves the target while it exceeds `n^{1/4}`, then lowers it by one per
    /// round. Reservoirs shrink geometrically from `sqrt(j0 n)` during the
    /// halving rounds and are `ceil(sqrt n)` afterwards.
    pub fn new(n: usize, j0: usize) -> Self {
        let nf = n as f64;
        let quarter = nf.powf(0.25);
        let mut j = vec![j0];
        while let Some(&last) = j.last() {
            if last == 0 {
                break;
            }
            let next = if last as f64 > quarter {
                last / 2
            } else {
                last - 1
            };
            j.push(next);
        }
        let tau = j.len() - 1;
        let tau1 = (0..=tau).find(|&k| j[k] as f64 <= quarter).unwrap_or(tau);
        let sqrt_n = nf.sqrt().ceil() as usize;
        let m = (1..=tau)
            .map(|k| {
                if k <= tau1 {
                    ((j0 as f64 * nf).sqrt() * 0.5f64.powf(k as f64 / 2.0)).ceil() as usize
                } else {
                    sqrt_n
                }
            })
            .collect();
        CleanupSchedule { j, m, tau1, tau }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CleanupReport {
    pub schedule: CleanupSchedule,
    /// Rounds in which the reservoir ran dry and had to be rebuilt.
    pub rebuilds: usize,
    pub reservoir_steps: u64,
    pub absorb_steps: u64,
    pub closing_steps: u64,
}

impl CleanupReport {
    pub fn total_steps(&self) -> u64 {
        self.reservoir_steps + self.absorb_steps + self.closing_steps
    }
}

/// Absorbs every unsaturated vertex and closes the path into a Hamiltonian
/// cycle. The state is switched to randomized colour mode with relaxed
/// spacing; colours left by earlier stages are discarded.
pub fn cleanup_run(
    state: &mut ProcessState,
    safety: f64,
    observer: &mut Observer<'_>,
) -> Result<CleanupReport> {
    if state.path().is_empty() {
        return Err(Error::Precondition("cleanup_run: the path is empty".into()));
    }
    state.convert_to_randomized();
    state.relax_spacing();
    let n = state.n();
    let schedule = CleanupSchedule::new(n, state.unsaturated_count());
    let mut report = CleanupReport {
        schedule,
        rebuilds: 0,
        reservoir_steps: 0,
        absorb_steps: 0,
        closing_steps: 0,
    };
    let max_rebuilds = (safety * report.schedule.tau.max(1) as f64).ceil() as usize;
    for k in 1..=report.schedule.tau {
        let target = report.schedule.j[k];
        let m = report.schedule.m[k - 1];
        loop {
            state.clear_colors();
            report.reservoir_steps += build_reservoir(state, m, observer)?;
            let (steps, done) = absorb(state, target, observer)?;
            report.absorb_steps += steps;
            if done {
                break;
            }
            report.rebuilds += 1;
            if report.rebuilds > max_rebuilds {
                return Err(Error::CleanupFailed {
                    steps: report.reservoir_steps + report.absorb_steps,
                    reason: format!(
                        "reservoir ran dry {} times with {} unsaturated vertices left",
                        report.rebuilds,
                        state.unsaturated_count()
                    ),
                });
            }
        }
    }
    state.clear_colors();
    report.closing_steps = close_cycle_run(state, safety, observer)?;
    Ok(report)
}

/// Adds `m` steps, colouring red every square that is on the path, not red
/// and not next to a red vertex. Circles go to an unsaturated vertex with the
/// fewest red arcs so far.
fn build_reservoir(state: &mut ProcessState, m: usize, observer: &mut Observer<'_>) -> Result<u64> {
    let n = state.n();
    let mut load = DegreeBuckets::from_vertices(n, state.unsaturated().iter());
    for _ in 0..m {
        let u = state.draw_square();
        if reservoir_accepts(state, u) {
            let v = load
                .sample_min(state.rng())
                .expect("unsaturated vertices remain");
            load.increment(v);
            state.color_arc(u, v, Hue::Red)?;
        } else {
            let v = state.draw_any();
            state.pass(u, v);
        }
        observer(state, Stage::Cleanup);
    }
    Ok(m as u64)
}

fn reservoir_accepts(state: &ProcessState, u: VertexId) -> bool {
    if !state.path().contains(u) || state.colors().color(u).is_colored() {
        return false;
    }
    [Side::Left, Side::Right]
        .into_iter()
        .filter_map(|side| state.path().step(u, side))
        .all(|w| !state.colors().color(w).is_colored())
}

/// Adds steps until at most `target` vertices are unsaturated, augmenting
/// whenever the square sits next to a red vertex. Returns the step count and
/// whether the target was reached before the reservoir ran out.
fn absorb(
    state: &mut ProcessState,
    target: usize,
    observer: &mut Observer<'_>,
) -> Result<(u64, bool)> {
    let mut steps = 0;
    while state.unsaturated_count() > target {
        if state.colors().colored_count() == 0 {
            return Ok((steps, false));
        }
        let u = state.draw_square();
        steps += 1;
        let red_neighbour = if state.path().contains(u) {
            [Side::Left, Side::Right]
                .into_iter()
                .filter_map(|side| state.path().step(u, side))
                .find(|&w| state.colors().color(w).is_colored())
        } else {
            None
        };
        match red_neighbour {
            Some(x) => {
                state.augment_path(u, x)?;
            }
            None => {
                let v = state.draw_any();
                state.pass(u, v);
            }
        }
        observer(state, Stage::Cleanup);
    }
    Ok((steps, true))
}

/// Closes a Hamiltonian path `u ... v` into a cycle. First `ceil(sqrt n)`
/// arcs point at the head `u`; each square `y` marks its left neighbour `x`.
/// Then arcs point at the tail `v` until a marked square `x` arrives, and the
/// path edge `x y` is swapped for `x v` and `y u`. The head phase runs on
/// past `ceil(sqrt n)` arcs only while nothing is marked.
pub fn close_cycle_run(
    state: &mut ProcessState,
    safety: f64,
    observer: &mut Observer<'_>,
) -> Result<u64> {
    if state.unsaturated_count() != 0 {
        return Err(Error::Precondition(format!(
            "close_cycle_run: {} vertices are still unsaturated",
            state.unsaturated_count()
        )));
    }
    let n = state.n() as f64;
    let head = state.path().head().expect("non-empty path");
    let tail = state.path().tail().expect("non-empty path");
    let mut marked: HashMap<VertexId, usize> = HashMap::new();
    let mut steps = 0u64;
    let budget = (safety * n.sqrt() * n.ln().powi(2)).ceil() as u64;
    let quota = n.sqrt().ceil() as u64;
    // On very small graphs the quota can end with nothing marked.
    while steps < quota || (marked.is_empty() && steps < budget) {
        let y = state.draw_square();
        state.pass(y, head);
        let arc = state.arcs().len() - 1;
        steps += 1;
        if let Some(x) = state.path().left(y) {
            marked.entry(x).or_insert(arc);
        }
        observer(state, Stage::Closing);
    }
    for _ in 0..budget {
        let x = state.draw_square();
        state.pass(x, tail);
        let arc = state.arcs().len() - 1;
        steps += 1;
        if let Some(&arc_y_head) = marked.get(&x) {
            state.close_cycle(x, arc_y_head, arc);
            observer(state, Stage::Closing);
            return Ok(steps);
        }
        observer(state, Stage::Closing);
    }
    Err(Error::CleanupFailed {
        steps,
        reason: format!("no marked square among {budget} closing arcs"),
    })
}
