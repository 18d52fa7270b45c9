//! Fixed-step classical Runge–Kutta with domain-exit detection by bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which boundary of the integration domain the solution reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitReason {
    /// `x` came within the margin of 1.
    Saturated,
    /// The time horizon `s = 3` was reached.
    TimeLimit,
    /// The minimum-degree mass `d` fell to the phase floor.
    PhaseExhausted,
    /// Some coordinate left its bounding box.
    OutOfBox,
    /// The caller's `s_max` was reached inside the domain.
    Horizon,
}

/// An autonomous or time-dependent system `y' = F(s, y)` on a bounded domain.
pub trait OdeSystem {
    fn dim(&self) -> usize;

    /// Writes `F(s, y)` into `dy`. Must be finite on the open domain.
    fn rhs(&self, s: f64, y: &[f64], dy: &mut [f64]);

    /// `Some(reason)` once `(s, y)` is outside the domain.
    fn exit(&self, s: f64, y: &[f64]) -> Option<ExitReason>;

    fn labels(&self) -> Vec<String>;

    /// Largest stable step at `(s, y)`, when the system is locally stiff.
    fn max_step(&self, _s: f64, _y: &[f64]) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    pub labels: Vec<String>,
    /// `(s, state)` pairs, strictly increasing in `s`, all inside the domain.
    pub samples: Vec<(f64, Vec<f64>)>,
    /// Last in-domain point; within `EXIT_TOLERANCE` of the boundary crossing.
    pub exit_s: f64,
    pub exit_state: Vec<f64>,
    pub exit_reason: ExitReason,
}

impl Trajectory {
    /// Linear interpolation of coordinate `k` at `s`, clamped to the sampled
    /// range.
    pub fn interpolate(&self, s: f64, k: usize) -> f64 {
        let samples = &self.samples;
        let i = samples.partition_point(|(t, _)| *t <= s);
        if i == 0 {
            return samples[0].1[k];
        }
        if i == samples.len() {
            return samples[i - 1].1[k];
        }
        let (s0, y0) = &samples[i - 1];
        let (s1, y1) = &samples[i];
        let w = (s - s0) / (s1 - s0);
        y0[k] + w * (y1[k] - y0[k])
    }
}

/// Width of the bracket around a domain exit.
pub const EXIT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct IntegrateOptions {
    pub step: f64,
    /// Stop (with [`ExitReason::Horizon`]) at this `s` if the domain is not
    /// left earlier.
    pub s_max: f64,
    /// Record a sample whenever `s` advances by at least this much; 0 records
    /// every step.
    pub sample_every: f64,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            step: 1e-5,
            s_max: f64::INFINITY,
            sample_every: 1e-3,
        }
    }
}

struct Stepper {
    k: [Vec<f64>; 4],
    tmp: Vec<f64>,
}

impl Stepper {
    fn new(dim: usize) -> Self {
        Stepper {
            k: std::array::from_fn(|_| vec![0.0; dim]),
            tmp: vec![0.0; dim],
        }
    }

    fn step<S: OdeSystem + ?Sized>(
        &mut self,
        sys: &S,
        s: f64,
        y: &[f64],
        h: f64,
        out: &mut [f64],
    ) -> Result<()> {
        let [k1, k2, k3, k4] = &mut self.k;
        let tmp = &mut self.tmp;
        sys.rhs(s, y, k1);
        check(s, y, k1)?;
        for i in 0..y.len() {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        sys.rhs(s + 0.5 * h, tmp, k2);
        check(s, tmp, k2)?;
        for i in 0..y.len() {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        sys.rhs(s + 0.5 * h, tmp, k3);
        check(s, tmp, k3)?;
        for i in 0..y.len() {
            tmp[i] = y[i] + h * k3[i];
        }
        sys.rhs(s + h, tmp, k4);
        check(s, tmp, k4)?;
        for i in 0..y.len() {
            out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        check(s + h, out, out)
    }
}

fn check(s: f64, y: &[f64], dy: &[f64]) -> Result<()> {
    if dy.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Numerical {
            s,
            state: y.to_vec(),
        })
    }
}

/// Integrates from `(s0, y0)` until the solution leaves the domain or reaches
/// `s_max`. The crossing step is bisected down to [`EXIT_TOLERANCE`].
pub fn integrate<S: OdeSystem + ?Sized>(
    sys: &S,
    s0: f64,
    y0: &[f64],
    opts: IntegrateOptions,
) -> Result<Trajectory> {
    if !(opts.step > 0.0) {
        return Err(Error::InvalidConfig(format!("step size {}", opts.step)));
    }
    if y0.len() != sys.dim() {
        return Err(Error::InvalidConfig(format!(
            "initial state has {} coordinates, system has {}",
            y0.len(),
            sys.dim()
        )));
    }
    if let Some(reason) = sys.exit(s0, y0) {
        return Err(Error::Domain {
            s: s0,
            reason: format!("initial state outside the domain ({reason:?})"),
        });
    }
    let mut stepper = Stepper::new(y0.len());
    let mut y = y0.to_vec();
    let mut next = vec![0.0; y0.len()];
    let mut s = s0;
    let mut samples = vec![(s0, y.clone())];
    let mut last_sample = s0;

    loop {
        let mut h = opts.step;
        if let Some(limit) = sys.max_step(s, &y) {
            h = h.min(limit);
        }
        let mut hit_horizon = false;
        if s + h >= opts.s_max {
            h = opts.s_max - s;
            hit_horizon = true;
        }
        stepper.step(sys, s, &y, h, &mut next)?;
        let s_next = if hit_horizon { opts.s_max } else { s + h };
        if let Some(reason) = sys.exit(s_next, &next) {
            let (s_exit, y_exit, reason) = bisect(sys, &mut stepper, s, &y, h, reason)?;
            if s_exit > samples.last().map_or(f64::NEG_INFINITY, |p| p.0) {
                samples.push((s_exit, y_exit.clone()));
            }
            return Ok(Trajectory {
                labels: sys.labels(),
                samples,
                exit_s: s_exit,
                exit_state: y_exit,
                exit_reason: reason,
            });
        }
        std::mem::swap(&mut y, &mut next);
        s = s_next;
        if hit_horizon {
            samples.push((s, y.clone()));
            return Ok(Trajectory {
                labels: sys.labels(),
                samples,
                exit_s: s,
                exit_state: y,
                exit_reason: ExitReason::Horizon,
            });
        }
        if s - last_sample >= opts.sample_every {
            samples.push((s, y.clone()));
            last_sample = s;
        }
    }
}

/// Finds the largest in-domain fraction of the step from `(s, y)`.
fn bisect<S: OdeSystem + ?Sized>(
    sys: &S,
    stepper: &mut Stepper,
    s: f64,
    y: &[f64],
    h: f64,
    mut reason: ExitReason,
) -> Result<(f64, Vec<f64>, ExitReason)> {
    let mut lo = 0.0;
    let mut hi = h;
    let mut y_lo = y.to_vec();
    let mut trial = vec![0.0; y.len()];
    while hi - lo > EXIT_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        stepper.step(sys, s, y, mid, &mut trial)?;
        match sys.exit(s + mid, &trial) {
            Some(r) => {
                hi = mid;
                reason = r;
            }
            None => {
                lo = mid;
                y_lo.copy_from_slice(&trial);
            }
        }
    }
    Ok((s + lo, y_lo, reason))
}
