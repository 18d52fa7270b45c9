use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `f(s)`: the scaled number of squares that can still lie on a Hamiltonian
/// cycle after `s n` steps.
pub fn eval_f(s: f64) -> f64 {
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    2.0 + (-3.0 * s).exp() * (s + 1.0) * (1.0 - s2 / 2.0 - s3 / 3.0 - s4 / 8.0)
        + (-2.0 * s).exp() * (2.0 * s + 2.5 * s2 + 0.5 * s3)
        - (-s).exp() * (3.0 + 2.0 * s)
}

pub const BETA_BRACKET: (f64, f64) = (0.5, 2.5);
pub const BETA_TOLERANCE: f64 = 1e-10;

/// The root of `f(s) = 1` in [`BETA_BRACKET`], by bisection.
pub fn find_beta() -> Result<f64> {
    let (mut lo, mut hi) = BETA_BRACKET;
    let g = |s: f64| eval_f(s) - 1.0;
    let (glo, ghi) = (g(lo), g(hi));
    if glo.signum() == ghi.signum() {
        return Err(Error::Bracket { lo, hi });
    }
    while hi - lo > BETA_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if g(mid).signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Structure {
    Z,
    W1,
    W2,
    T1,
    T2,
}

impl Structure {
    pub const ALL: [Structure; 5] = [
        Structure::Z,
        Structure::W1,
        Structure::W2,
        Structure::T1,
        Structure::T2,
    ];
}

/// Limiting count of `which` divided by `n` after `s n` steps.
pub fn closed_form(which: Structure, s: f64) -> f64 {
    let e1 = (-s).exp();
    let e2 = (-2.0 * s).exp();
    let s2 = s * s;
    let s3 = s2 * s;
    let s4 = s3 * s;
    match which {
        Structure::Z => 2.0 - 2.0 * e1 - e1 * s,
        Structure::W1 => e1 * (1.0 - e1 * s2 / 2.0 - e1 * s - e1),
        Structure::W2 => e1 * (s - e1 * s2 - e1 * s3 / 2.0 - e1 * s),
        Structure::T1 => e2 * (-1.0 + s - e1 * s3 / 3.0 - e1 * s2 / 2.0 - e1 * s4 / 8.0 + e1),
        Structure::T2 => e2 * (-s + s2 - e1 * s * (s4 / 8.0 + s3 / 3.0 + s2 / 2.0 - 1.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_at_zero_and_infinity() {
        assert!(eval_f(0.0).abs() < 1e-12);
        assert!((eval_f(50.0) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn beta() {
        let b = find_beta().unwrap();
        assert!((b - 1.26575).abs() < 5e-5, "{b}");
        assert!((eval_f(b) - 1.0).abs() < 1e-9);
        let prior = 2f64.ln() + (1.0 + 2f64.ln()).ln();
        assert!(b > prior);
    }

    #[test]
    fn closed_forms_vanish_at_zero() {
        for w in Structure::ALL {
            assert!(closed_form(w, 0.0).abs() < 1e-15, "{w:?}");
        }
    }

    #[test]
    fn combination_is_f() {
        for i in 0..=300 {
            let s = i as f64 * 0.01;
            let c = |w| closed_form(w, s);
            let comb = c(Structure::Z) - c(Structure::W1) - c(Structure::W2)
                + c(Structure::T1)
                + c(Structure::T2);
            assert!((comb - eval_f(s)).abs() < 1e-12, "s={s}");
        }
    }
}
