use proptest::prelude::*;

use semiham::engine::{audit, CaseTag, Color, ColorMode, ProcessState, VertexId};
use semiham::harness::{
    read_checkpoints_csv, read_json, run, write_checkpoints_csv, write_json, Checkpoint, RunConfig,
    RunSummary,
};
use semiham::lowerbound::{count_structures, eval_f, HistoryLog};
use semiham::strategy::{
    degree_greedy_step, fully_randomized_step, uniform_baseline_step, Stage, StrategyKind,
};

fn step(state: &mut ProcessState, u: VertexId) {
    match state.mode() {
        ColorMode::Randomized => fully_randomized_step(state, u).unwrap(),
        ColorMode::Greedy => degree_greedy_step(state, u).unwrap(),
    };
}

fn evolve(n: usize, seed: u64, mode: ColorMode, steps: usize) -> ProcessState {
    let mut s = ProcessState::new(n, seed, mode).unwrap();
    for _ in 0..steps {
        let u = s.draw_square();
        step(&mut s, u);
    }
    s
}

fn mode_strategy() -> impl Strategy<Value = ColorMode> {
    prop_oneof![Just(ColorMode::Randomized), Just(ColorMode::Greedy)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn audit_is_clean_after_every_step(
        n in 3usize..80,
        seed in any::<u64>(),
        mode in mode_strategy(),
        factor in 1usize..4,
    ) {
        let mut s = ProcessState::new(n, seed, mode).unwrap();
        for _ in 0..factor * n {
            let u = s.draw_square();
            let before = s.path().len();
            step(&mut s, u);
            let grown = s.path().len() - before;
            prop_assert!(grown <= 1);
            let problems = audit(&s);
            prop_assert!(problems.is_empty(), "step {}: {:?}", s.step(), problems);
        }
    }

    #[test]
    fn case_analysis_is_total_and_exclusive(
        n in 3usize..=50,
        seed in any::<u64>(),
        mode in mode_strategy(),
        steps in 0usize..120,
    ) {
        let s = evolve(n, seed, mode, steps);
        let path = s.path();
        let colors = s.colors();
        for i in 1..=n as u32 {
            let u = VertexId::new(i);
            let on = path.contains(u);
            let next_to: Vec<VertexId> = [path.left(u), path.right(u)]
                .into_iter()
                .flatten()
                .filter(|&w| on && colors.color(w).is_colored())
                .collect();
            let permissible = on && colors.is_permissible(u, path);
            let c = colors.color(u);
            let colouring = match mode {
                ColorMode::Randomized => c == Color::OneRed,
                ColorMode::Greedy => matches!(c, Color::Red | Color::Blue),
            };
            let holds = [!on, !next_to.is_empty(), permissible, on && colouring];
            prop_assert!(holds.iter().filter(|&&h| h).count() <= 1, "u = {u}: {holds:?}");
            prop_assert!(next_to.len() <= 1, "u = {u} sits next to two coloured vertices");
            let tag = s.classify_square(u);
            let ok = match tag {
                CaseTag::Unsaturated => holds[0],
                CaseTag::AdjacentToColored(x) => holds[1] && next_to == vec![x],
                CaseTag::Permissible => holds[2],
                CaseTag::ColoredOneRed => holds[3] && c == Color::OneRed,
                CaseTag::ColoredRed => holds[3] && c == Color::Red,
                CaseTag::ColoredBlue => holds[3] && c == Color::Blue,
                CaseTag::Pass => !holds.iter().any(|&h| h),
            };
            prop_assert!(ok, "u = {u}: tag {tag:?}, predicates {holds:?}");
        }
    }

    #[test]
    fn path_growth_count_matches_slots(
        n in 3usize..=50,
        seed in any::<u64>(),
        mode in mode_strategy(),
        steps in 1usize..120,
    ) {
        let s = evolve(n, seed, mode, steps);
        let x = s.path().len();
        let mut grows = 0;
        for i in 1..=n as u32 {
            let u = VertexId::new(i);
            let mut t = s.clone();
            step(&mut t, u);
            let delta = t.path().len() - x;
            prop_assert!(delta <= 1);
            grows += delta;
        }
        let slots: usize = s
            .path()
            .iter()
            .filter(|&v| s.colors().color(v).is_colored())
            .map(|v| usize::from(s.path().left(v).is_some()) + usize::from(s.path().right(v).is_some()))
            .sum();
        prop_assert_eq!(grows, (n - x) + slots);
    }

    #[test]
    fn structure_counts_are_bounded(
        n in 1usize..200,
        seed in any::<u64>(),
        factor in 0.0f64..3.0,
    ) {
        let mut s = ProcessState::new(n.max(3), seed, ColorMode::Randomized).unwrap();
        let n = s.n();
        let t = (factor * n as f64) as u64;
        for _ in 0..t {
            uniform_baseline_step(&mut s);
        }
        let h = HistoryLog::from_arcs(n, s.arcs(), t);
        let c = count_structures(&h);
        let usable = c.usable();
        prop_assert!(usable >= 0);
        prop_assert!(usable <= c.z as i64);
        prop_assert!(c.z <= 2 * n as u64);
        let by_vertex: u64 = (1..=n as u32)
            .map(|v| s.square_count(VertexId::new(v)).min(2) as u64)
            .sum();
        prop_assert_eq!(c.z, by_vertex);
    }

    #[test]
    fn z_grows_with_the_horizon(n in 3usize..100, seed in any::<u64>()) {
        let mut s = ProcessState::new(n, seed, ColorMode::Randomized).unwrap();
        for _ in 0..3 * n {
            uniform_baseline_step(&mut s);
        }
        let mut last = 0;
        for t in 0..=3 * n as u64 {
            let z = count_structures(&HistoryLog::from_arcs(n, s.arcs(), t)).z;
            prop_assert!(z >= last);
            last = z;
        }
    }

    #[test]
    fn checkpoint_csv_round_trip(
        rows in prop::collection::vec(
            (any::<u64>(), -1e6f64..1e6, 0.0f64..1.0, 0.0f64..1.0, prop::collection::vec((0u32..20, 0u32..20, 0.0f64..1.0), 0..5)),
            0..20,
        )
    ) {
        let checkpoints: Vec<Checkpoint> = rows
            .into_iter()
            .map(|(t, s, x, l1, types)| Checkpoint {
                t,
                s,
                x,
                l1,
                l2: l1 / 3.0,
                b: x * 0.1,
                r: l1 * 0.7,
                m: 1.0 / 3.0,
                stage: Stage::Greedy,
                types,
            })
            .collect();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        write_checkpoints_csv(&path, &checkpoints).unwrap();
        prop_assert_eq!(read_checkpoints_csv(&path).unwrap(), checkpoints);
    }
}

#[test]
fn f_crosses_one_once() {
    let mut changes = 0;
    let mut prev = eval_f(0.5) - 1.0;
    for i in 1..=2000 {
        let s = 0.5 + i as f64 * 1e-3;
        let g = eval_f(s) - 1.0;
        if g.signum() != prev.signum() {
            changes += 1;
        }
        prev = g;
    }
    assert_eq!(changes, 1);
}

#[test]
fn summary_json_round_trip_and_replay() {
    let config = RunConfig::new(2000, 5, StrategyKind::ThreeStage).with_phases(3);
    let a = run(&config).unwrap();
    let b = run(&config).unwrap();
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    write_json(&path, &a).unwrap();
    let back: RunSummary = read_json(&path).unwrap();
    assert_eq!(back, a);
}
