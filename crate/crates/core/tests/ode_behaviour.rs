use semiham::ode::{
    compute_alpha_star, compute_sigma_chain, integrate, AlphaOptions, ChainOptions, ExitReason,
    IntegrateOptions, PhaseLayout, RandomizedSystem,
};

fn randomized_exit(step: f64) -> f64 {
    let sys = RandomizedSystem { margin: 1e-6 };
    let opts = IntegrateOptions {
        step,
        ..IntegrateOptions::default()
    };
    let traj = integrate(&sys, 0.0, &[0.0, 0.0, 0.0], opts).unwrap();
    assert_eq!(traj.exit_reason, ExitReason::Saturated);
    traj.exit_s
}

#[test]
fn halving_the_step_barely_moves_the_exit() {
    let coarse = randomized_exit(1e-5);
    let fine = randomized_exit(5e-6);
    assert!((coarse - fine).abs() < 1e-6, "{coarse} vs {fine}");
}

#[test]
fn randomized_solution_stays_physical() {
    let sys = RandomizedSystem { margin: 1e-6 };
    let traj = integrate(&sys, 0.0, &[0.0, 0.0, 0.0], IntegrateOptions::default()).unwrap();
    assert!(traj.samples.len() > 100);
    for w in traj.samples.windows(2) {
        assert!(w[1].0 > w[0].0);
        assert!(w[1].1[0] >= w[0].1[0]);
    }
    for (s, y) in &traj.samples {
        assert!(y[1] >= -1e-9 && y[2] >= -1e-9, "s = {s}: {y:?}");
    }
}

#[test]
fn chained_phases_start_where_the_previous_ended() {
    let chain = compute_sigma_chain(10, ChainOptions::default()).unwrap();
    assert_eq!(chain.sigma.len(), 10);
    for q in 2..=10 {
        let prev = &chain.phases[q - 2];
        let next = &chain.phases[q - 1];
        let (lp, ln) = (PhaseLayout::new(q - 1), PhaseLayout::new(q));
        let end = &prev.exit_state;
        let (s0, start) = &next.samples[0];
        assert!((s0 - chain.sigma[q - 2]).abs() < 1e-12);
        assert_eq!(start[0], end[0]);
        assert_eq!(start[1], end[1]);
        // Degree q-1 types of phase q: the top types of phase q-1 plus the
        // folded residual of its bottom types.
        for k1 in 0..q {
            let k2 = q - 1 - k1;
            let mut want = end[lp.index(k1, k2).unwrap()];
            if k1 >= 1 {
                want += end[lp.index(k1 - 1, k2).unwrap()];
            }
            let got = start[ln.index(k1, k2).unwrap()];
            assert!(
                (got - want).abs() < 1e-15,
                "q = {q}, ({k1}, {k2}): {got} vs {want}"
            );
        }
        for k1 in 0..=q {
            assert_eq!(start[ln.index(k1, q - k1).unwrap()], 0.0);
        }
    }
}

#[test]
fn sigmas_increase() {
    let chain = compute_sigma_chain(100, ChainOptions::default()).unwrap();
    assert_eq!(chain.sigma.len(), 100);
    assert!(chain.sigma[0] > 0.0);
    assert!(chain.sigma.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn alpha_falls_with_more_phases() {
    let alpha = |n_phases| {
        compute_alpha_star(n_phases, &[1e-6], AlphaOptions::default())
            .unwrap()
            .value
    };
    let values: Vec<f64> = [1, 5, 10, 100].into_iter().map(alpha).collect();
    assert!(values.windows(2).all(|w| w[1] <= w[0]), "{values:?}");
    assert!(values[3] < alpha(0));
}
