//! Scaled dynamics of the degree-greedy strategy during phase `q`, and the
//! chain of phases that produces `sigma_1, ..., sigma_N`.
//!
//! State layout for phase `q >= 1`: `[x, r, lo.., hi..]` where
//! `lo[k1] = c_{k1, q-1-k1}` for `k1 = 0..q` and `hi[k1] = c_{k1, q-k1}` for
//! `k1 = 0..=q`.

use serde::{Deserialize, Serialize};

use super::integrate::{integrate, ExitReason, IntegrateOptions, OdeSystem, Trajectory};
use super::randomized::TIME_LIMIT;
use crate::error::{Error, Result};

/// Default floor on the minimum-degree mass `d` that ends a phase.
pub const PHASE_FLOOR: f64 = 1e-6;

/// Below this both numerator and `d` count as zero in `c / d`.
const ZERO_GUARD: f64 = 1e-12;

/// Index arithmetic for the phase-`q` state vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseLayout {
    q: usize,
}

impl PhaseLayout {
    pub fn new(q: usize) -> Self {
        assert!(q >= 1, "phases start at 1");
        PhaseLayout { q }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        2 * self.q + 3
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Position of `c_{k1,k2}`, if `k1 + k2` is `q - 1` or `q`.
    pub fn index(&self, k1: usize, k2: usize) -> Option<usize> {
        let q = self.q;
        if k1 + k2 + 1 == q {
            Some(2 + k1)
        } else if k1 + k2 == q {
            Some(2 + q + k1)
        } else {
            None
        }
    }

    /// All `(k1, k2, index)` triples, lower degree first.
    pub fn types(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let q = self.q;
        let lo = (0..q).map(move |k1| (k1, q - 1 - k1, 2 + k1));
        let hi = (0..=q).map(move |k1| (k1, q - k1, 2 + q + k1));
        lo.chain(hi)
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out = vec!["x".to_string(), "r".to_string()];
        out.extend(self.types().map(|(a, b, _)| format!("c_{a}_{b}")));
        out
    }
}

fn ratio(c: f64, d: f64, floor: f64) -> f64 {
    if c.abs() < ZERO_GUARD && d.abs() < ZERO_GUARD {
        0.0
    } else {
        c / d.max(floor)
    }
}

fn greedy_into(q: usize, y: &[f64], dy: &mut [f64], floor: f64) {
    let x = y[0];
    let r = y[1];
    let lo = &y[2..2 + q];
    let hi = &y[2 + q..2 * q + 3];
    let u = 1.0 - x;

    let (mut b, mut m, mut flow) = (0.0, 0.0, 0.0);
    for (k1, &c) in lo.iter().enumerate() {
        let k2 = (q - 1 - k1) as f64;
        let k1 = k1 as f64;
        b += k1 * c;
        m += k2 * c;
        flow += 2.0 * k2 * (k1 + k2) * c;
    }
    for (k1, &c) in hi.iter().enumerate() {
        let k2 = (q - k1) as f64;
        let k1 = k1 as f64;
        b += k1 * c;
        m += k2 * c;
        flow += 2.0 * k2 * (k1 + k2) * c;
    }
    let d: f64 = lo.iter().sum();
    let l = b + r + m;
    let q_mass = x - 5.0 * l;

    dy[0] = 1.0 - x + 2.0 * l;
    dy[1] = m - r - 2.0 * (b + m) * r / u + flow - 2.0 * r * (1.0 + r / u - m / u) - r;

    // Terms shared by both degree groups; `group[k1] = c_{k1, deg - k1}`.
    let common = |group: &[f64], deg: usize, k1: usize| -> f64 {
        let c = group[k1];
        let k2 = deg - k1;
        let mk = k2 as f64 * c;
        let bk = k1 as f64 * c;
        let m_prev = if k1 > 0 {
            (k2 + 1) as f64 * group[k1 - 1]
        } else {
            0.0
        };
        let b_next = if k2 > 0 {
            (k1 + 1) as f64 * group[k1 + 1]
        } else {
            0.0
        };
        m_prev - c - mk + 2.0 * (b + m) * (m_prev - mk) / u - 2.0 * (bk + mk)
            + 2.0 * r * (m_prev - mk - c) / u
            + b_next
            - bk
    };

    for k1 in 0..q {
        let share = ratio(lo[k1], d, floor);
        dy[2 + k1] = common(lo, q - 1, k1) - q_mass * share - r * share;
    }
    for k1 in 0..=q {
        let k2 = q - k1;
        let from_blue = if k1 > 0 {
            ratio(lo[k1 - 1], d, floor)
        } else {
            0.0
        };
        let from_red = if k2 > 0 { ratio(lo[k1], d, floor) } else { 0.0 };
        dy[2 + q + k1] = common(hi, q, k1) + q_mass * from_blue + r * from_red;
    }
}

/// Right-hand side of the phase-`q` system at `state` (see module docs for the
/// layout). The system is autonomous; `s` only labels errors.
///
/// `l` in the permissible-mass term `x - 5 l` is the total coloured fraction
/// `b + r + m`. Ratios `c / d` use `d` clamped at [`PHASE_FLOOR`], and `0/0`
/// is taken as 0.
pub fn rhs_greedy_phase(q: usize, s: f64, state: &[f64]) -> Result<Vec<f64>> {
    if q == 0 {
        return Err(Error::InvalidConfig(
            "phase index must be at least 1".into(),
        ));
    }
    let layout = PhaseLayout::new(q);
    if state.len() != layout.len() {
        return Err(Error::InvalidConfig(format!(
            "phase {q} state has {} coordinates, expected {}",
            state.len(),
            layout.len()
        )));
    }
    if state[0] >= 1.0 {
        return Err(Error::Domain {
            s,
            reason: format!("x = {} >= 1", state[0]),
        });
    }
    let mut out = vec![0.0; layout.len()];
    greedy_into(q, state, &mut out, PHASE_FLOOR);
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
pub struct GreedyPhaseSystem {
    pub q: usize,
    pub margin: f64,
    pub floor: f64,
}

impl OdeSystem for GreedyPhaseSystem {
    fn dim(&self) -> usize {
        2 * self.q + 3
    }

    fn rhs(&self, _s: f64, y: &[f64], dy: &mut [f64]) {
        greedy_into(self.q, y, dy, self.floor);
    }

    fn exit(&self, s: f64, y: &[f64]) -> Option<ExitReason> {
        let d: f64 = y[2..2 + self.q].iter().sum();
        if d <= self.floor {
            Some(ExitReason::PhaseExhausted)
        } else if y[0] >= 1.0 - self.margin {
            Some(ExitReason::Saturated)
        } else if s >= TIME_LIMIT {
            Some(ExitReason::TimeLimit)
        } else if y[1].abs() >= 2.0 || y[2..].iter().any(|c| c.abs() >= 2.0) {
            Some(ExitReason::OutOfBox)
        } else {
            None
        }
    }

    fn labels(&self) -> Vec<String> {
        PhaseLayout::new(self.q).labels()
    }

    /// The `c / d` shares relax at rate `(x - 5l + r) / d`, which grows without
    /// bound as the phase ends; the step is kept a tenth of that time scale so
    /// the shares stay accurate, not just stable.
    fn max_step(&self, _s: f64, y: &[f64]) -> Option<f64> {
        let q = self.q;
        let d: f64 = y[2..2 + q].iter().sum();
        let layout = PhaseLayout::new(q);
        let l: f64 = y[1]
            + layout
                .types()
                .map(|(k1, k2, i)| (k1 + k2) as f64 * y[i])
                .sum::<f64>();
        let rate = ((y[0] - 5.0 * l).abs() + y[1].abs()) / d.max(self.floor);
        (rate > 0.0).then(|| STABLE_FRACTION / rate)
    }
}

/// Step as a fraction of the relaxation time of the `c / d` shares.
const STABLE_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy)]
pub struct ChainOptions {
    pub step: f64,
    /// `x` must stay below `1 - margin`.
    pub margin: f64,
    pub floor: f64,
    pub sample_every: f64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            step: 1e-5,
            margin: 1e-6,
            floor: PHASE_FLOOR,
            sample_every: 1e-3,
        }
    }
}

/// Result of chaining phases `1..=N`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SigmaChain {
    /// `sigma_1, ..., sigma_N`; shorter than `N` if the chain stopped early.
    pub sigma: Vec<f64>,
    /// Values at the end of the last completed phase.
    pub x: f64,
    pub r: f64,
    /// `(k1, k2, c_{k1,k2})` with `k1 + k2 = N` after the residual fold.
    pub types: Vec<(usize, usize, f64)>,
    /// Set when a phase ended at a boundary other than the `d` floor.
    pub stopped: Option<ExitReason>,
    pub phases: Vec<Trajectory>,
}

impl SigmaChain {
    pub fn last_sigma(&self) -> f64 {
        self.sigma.last().copied().unwrap_or(0.0)
    }
}

/// Integrates phases `1..=n_phases` back to back. A phase ends when the mass
/// of minimum-degree types drops to the floor; that residual is moved one
/// blue arc up (`c_{k1,k2}` into `c_{k1+1,k2}`), which is where permissible
/// landings send it.
pub fn compute_sigma_chain(n_phases: usize, opts: ChainOptions) -> Result<SigmaChain> {
    let mut chain = SigmaChain {
        sigma: Vec::with_capacity(n_phases),
        x: 0.0,
        r: 0.0,
        types: vec![(0, 0, 1.0)],
        stopped: None,
        phases: Vec::new(),
    };
    // c_{k1, q-1-k1} entering phase q, indexed by k1.
    let mut entering = vec![1.0];
    let mut s = 0.0;
    for q in 1..=n_phases {
        let sys = GreedyPhaseSystem {
            q,
            margin: opts.margin,
            floor: opts.floor,
        };
        let mut y0 = vec![chain.x, chain.r];
        y0.extend_from_slice(&entering);
        y0.extend(std::iter::repeat(0.0).take(q + 1));
        let traj = integrate(
            &sys,
            s,
            &y0,
            IntegrateOptions {
                step: opts.step,
                s_max: f64::INFINITY,
                sample_every: opts.sample_every,
            },
        )?;
        let end = traj.exit_state.clone();
        let reason = traj.exit_reason;
        s = traj.exit_s;
        chain.phases.push(traj);
        if reason != ExitReason::PhaseExhausted {
            chain.stopped = Some(reason);
            break;
        }
        let mut hi = end[2 + q..].to_vec();
        for (k1, &residual) in end[2..2 + q].iter().enumerate() {
            hi[k1 + 1] += residual;
        }
        chain.sigma.push(s);
        chain.x = end[0];
        chain.r = end[1];
        chain.types = hi
            .iter()
            .enumerate()
            .map(|(k1, &c)| (k1, q - k1, c))
            .collect();
        entering = hi;
    }
    Ok(chain)
}
