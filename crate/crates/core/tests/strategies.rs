use rayon::prelude::*;

use semiham::engine::{is_hamiltonian_cycle, ColorMode, ProcessState, Side};
use semiham::harness::{run, RunConfig};
use semiham::lowerbound::{count_structures, HistoryLog};
use semiham::ode::{compute_sigma_chain, ChainOptions};
use semiham::strategy::{
    cleanup_run, initial_mode, run_strategy, CutoffRule, Stage, StageReport, StrategyConfig,
    StrategyKind,
};

fn randomized_to(n: usize, seed: u64, unsaturated: usize) -> ProcessState {
    let config = StrategyConfig {
        n_phases: 0,
        stage2_cutoff: CutoffRule::Fixed(unsaturated),
        ..StrategyConfig::default()
    };
    let mut state = ProcessState::new(n, seed, ColorMode::Randomized).unwrap();
    let mut report = StageReport::default();
    run_strategy(
        StrategyKind::FullyRandomized,
        &config,
        &mut state,
        &mut report,
        &mut |_, _| {},
    )
    .unwrap();
    state
}

#[test]
fn reservoir_never_colours_next_to_red() {
    for seed in 0..5 {
        let mut state = randomized_to(3000, seed, 200);
        let mut checked = 0;
        // A colouring step touches only the square, so the neighbours' colours
        // after the step are the ones the guard saw.
        cleanup_run(&mut state, 20.0, &mut |s: &ProcessState, stage| {
            if stage != Stage::Cleanup {
                return;
            }
            let last = s.arcs().len() - 1;
            let u = s.arcs()[last].square;
            if s.colors().arcs(u).any(|a| a.arc == last) {
                checked += 1;
                assert_eq!(
                    s.colors().arcs(u).count(),
                    1,
                    "step {}: {u} was already red",
                    s.step()
                );
                for side in [Side::Left, Side::Right] {
                    if let Some(w) = s.path().step(u, side) {
                        assert!(
                            !s.colors().color(w).is_colored(),
                            "step {}: {u} sits next to red {w}",
                            s.step()
                        );
                    }
                }
            }
        })
        .unwrap();
        assert!(checked > 0);
        assert!(is_hamiltonian_cycle(state.arcs(), 3000).is_some());
    }
}

#[test]
fn phase_ends_track_the_chain() {
    let n = 10_000;
    let chain = compute_sigma_chain(2, ChainOptions::default()).unwrap();
    let config = StrategyConfig {
        n_phases: 2,
        ..StrategyConfig::default()
    };
    let taus: Vec<Vec<u64>> = (0..10u64)
        .into_par_iter()
        .map(|seed| {
            let mut state =
                ProcessState::new(n, seed, initial_mode(StrategyKind::DegreeGreedy, &config))
                    .unwrap();
            let mut report = StageReport::default();
            run_strategy(
                StrategyKind::DegreeGreedy,
                &config,
                &mut state,
                &mut report,
                &mut |_, _| {},
            )
            .unwrap();
            report.tau
        })
        .collect();
    for q in 1..=2 {
        let mean = taus.iter().map(|t| t[q] as f64 / n as f64).sum::<f64>() / taus.len() as f64;
        let sigma = chain.sigma[q - 1];
        assert!(
            (mean - sigma).abs() < 0.02,
            "phase {q}: tau/n = {mean}, sigma = {sigma}"
        );
    }
}

#[test]
fn cleanup_from_a_hundred_unsaturated_is_cheap() {
    let n = 100_000;
    let costs: Vec<(u64, u64)> = (0..20u64)
        .into_par_iter()
        .map(|seed| {
            let mut state = randomized_to(n, seed, 100);
            let start = state.step();
            cleanup_run(&mut state, 20.0, &mut |_, _| {}).unwrap();
            assert!(is_hamiltonian_cycle(state.arcs(), n).is_some());
            (seed, state.step() - start)
        })
        .collect();
    let over: Vec<String> = costs
        .iter()
        .filter(|&&(_, steps)| steps as f64 > 0.05 * n as f64)
        .map(|&(seed, steps)| format!("seed {seed}: {:.4} n", steps as f64 / n as f64))
        .collect();
    assert!(over.is_empty(), "clean-up above 0.05 n: {over:?}");
}

#[test]
fn finished_runs_have_n_usable_squares() {
    let n = 1000;
    let config = StrategyConfig::default();
    for seed in 0..20 {
        let kind = StrategyKind::ThreeStage;
        let mut state = ProcessState::new(n, seed, initial_mode(kind, &config)).unwrap();
        let mut report = StageReport::default();
        run_strategy(kind, &config, &mut state, &mut report, &mut |_, _| {}).unwrap();
        assert!(is_hamiltonian_cycle(state.arcs(), n).is_some());
        let counts = count_structures(&HistoryLog::from_arcs(n, state.arcs(), state.step()));
        assert!(counts.usable() >= n as i64, "seed {seed}: {counts:?}");
    }
}

#[test]
fn fully_randomized_trajectory_reaches_alpha() {
    let config = RunConfig::new(100_000, 3, StrategyKind::FullyRandomized).with_phases(0);
    let summary = run(&config).unwrap();
    let last = summary.checkpoints.last().unwrap();
    assert!(
        (last.s - 2.0772).abs() < 0.03,
        "last checkpoint at s = {}",
        last.s
    );
    assert!(last.x > 0.999);
    assert!(summary.checkpoints.windows(2).all(|w| w[0].t < w[1].t));
}
