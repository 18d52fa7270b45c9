//! Full consistency walk over a [`ProcessState`], recomputing every derived
//! quantity from scratch. O(n) per call; meant for tests and `verify`.

use std::collections::HashSet;

use super::color::SPACING;
use super::process::ProcessState;
use super::types::{Color, ColorMode, Hue, VertexId};

/// Returns one message per violated invariant; empty when consistent.
pub fn audit(state: &ProcessState) -> Vec<String> {
    let mut out = Vec::new();
    audit_arcs(state, &mut out);
    audit_path(state, &mut out);
    audit_colors(state, &mut out);
    if state.spacing_enforced() {
        audit_spacing(state, &mut out);
    }
    if state.mode() == ColorMode::Greedy {
        audit_greedy(state, &mut out);
    }
    out
}

fn vid(i: usize) -> VertexId {
    VertexId::new(i as u32)
}

fn audit_arcs(state: &ProcessState, out: &mut Vec<String>) {
    if state.arcs().len() as u64 != state.step() {
        out.push(format!(
            "arc log has {} entries at step {}",
            state.arcs().len(),
            state.step()
        ));
    }
    for (i, a) in state.arcs().iter().enumerate() {
        if a.step != i as u64 + 1 {
            out.push(format!("arc {i} carries step {}", a.step));
            break;
        }
    }
}

fn audit_path(state: &ProcessState, out: &mut Vec<String>) {
    let n = state.n();
    let path = state.path();
    let walk: Vec<VertexId> = path.iter().take(n + 1).collect();
    if walk.len() != path.len() {
        out.push(format!(
            "walk visits {} vertices, length says {}",
            walk.len(),
            path.len()
        ));
        return;
    }
    if walk.first().copied() != path.head() || walk.last().copied() != path.tail() {
        out.push("head/tail do not match the walk".into());
    }
    let mut seen = vec![false; n + 1];
    for (i, &v) in walk.iter().enumerate() {
        if seen[v.get() as usize] {
            out.push(format!("{v} visited twice"));
            return;
        }
        seen[v.get() as usize] = true;
        if !path.contains(v) {
            out.push(format!("{v} on walk but not flagged"));
        }
        let expected_left = (i > 0).then(|| walk[i - 1]);
        if path.left(v) != expected_left {
            out.push(format!("left link of {v} is broken"));
        }
    }
    for i in 1..=n {
        let v = vid(i);
        if path.contains(v) != seen[i] {
            out.push(format!("{v} flagged on path inconsistently"));
        }
        if state.is_unsaturated(v) == seen[i] {
            out.push(format!("{v} unsaturated flag disagrees with the path"));
        }
    }
    if state.unsaturated_count() != n - path.len() {
        out.push(format!(
            "unsaturated count {} != n - X = {}",
            state.unsaturated_count(),
            n - path.len()
        ));
    }

    // Path edges are realised by used arcs and, before closing, nothing else.
    let mut edge_arcs = HashSet::new();
    for w in walk.windows(2) {
        let (a, b) = (w[0], w[1]);
        match path.right_arc(a) {
            Some(idx) if idx < state.arcs().len() => {
                let arc = state.arcs()[idx];
                let ends = (arc.square, arc.circle);
                if ends != (a, b) && ends != (b, a) {
                    out.push(format!("arc {idx} does not join {a} and {b}"));
                }
                if !arc.used && !state.is_closed() {
                    out.push(format!("path edge {a}-{b} realised by an unused arc"));
                }
                edge_arcs.insert(idx);
            }
            _ => out.push(format!("path edge {a}-{b} has no arc")),
        }
    }
    if !state.is_closed() {
        for (i, a) in state.arcs().iter().enumerate() {
            if a.used && !edge_arcs.contains(&i) {
                out.push(format!("arc {i} is used but not a path edge"));
            }
        }
    }
}

fn audit_colors(state: &ProcessState, out: &mut Vec<String>) {
    let n = state.n();
    let colors = state.colors();
    let path = state.path();
    let mut counts = std::collections::HashMap::new();
    let mut incoming = vec![0usize; n + 1];
    for i in 1..=n {
        let v = vid(i);
        let c = colors.color(v);
        let arcs: Vec<_> = colors.arcs(v).collect();
        if !path.contains(v) {
            if c.is_colored() || !arcs.is_empty() {
                out.push(format!("{v} is off the path but coloured"));
            }
            continue;
        }
        if arcs.len() > 2 {
            out.push(format!("{v} holds {} coloured arcs", arcs.len()));
        }
        let reds = arcs.iter().filter(|a| a.hue == Hue::Red).count();
        let blues = arcs.len() - reds;
        let expected = match (state.mode(), blues, reds) {
            (_, 0, 0) => Some(Color::Uncolored),
            (ColorMode::Randomized, 0, 1) => Some(Color::OneRed),
            (ColorMode::Randomized, 0, 2) => Some(Color::TwoRed),
            (ColorMode::Greedy, 1, 0) => Some(Color::Blue),
            (ColorMode::Greedy, 0, 1) => Some(Color::Red),
            (ColorMode::Greedy, 1, 1) => Some(Color::Magenta),
            _ => None,
        };
        if expected != Some(c) {
            out.push(format!(
                "{v} is {c:?} but holds {blues} blue and {reds} red arcs"
            ));
        }
        *counts.entry(c).or_insert(0usize) += 1;
        for a in arcs {
            if !state.is_unsaturated(a.partner) {
                out.push(format!("{v} has a coloured arc to saturated {}", a.partner));
            }
            match state.arcs().get(a.arc) {
                Some(log) if log.square == v && log.circle == a.partner && !log.used => {}
                _ => out.push(format!(
                    "coloured arc {} of {v} does not match the log",
                    a.arc
                )),
            }
            if !colors.holders(a.partner).any(|h| h == v) {
                out.push(format!("{} does not list {v} as a holder", a.partner));
            }
            incoming[a.partner.get() as usize] += 1;
        }
    }
    for i in 1..=n {
        if colors.holders(vid(i)).count() != incoming[i] {
            out.push(format!("holder list of {i} has stale entries"));
        }
    }
    for c in [
        Color::OneRed,
        Color::TwoRed,
        Color::Blue,
        Color::Red,
        Color::Magenta,
    ] {
        let want = counts.get(&c).copied().unwrap_or(0);
        if colors.count(c) != want {
            out.push(format!(
                "count of {c:?} is {}, recount {want}",
                colors.count(c)
            ));
        }
    }
}

fn audit_spacing(state: &ProcessState, out: &mut Vec<String>) {
    let n = state.n();
    let colors = state.colors();
    let path = state.path();
    let mut near = vec![0u16; n + 1];
    let mut ball = Vec::new();
    for i in 1..=n {
        let v = vid(i);
        if !colors.color(v).is_colored() {
            continue;
        }
        ball.clear();
        path.ball(v, SPACING, &mut ball);
        for &w in &ball {
            near[w.get() as usize] += 1;
            if w != v && colors.color(w).is_colored() {
                out.push(format!(
                    "coloured {v} and {w} are within distance {SPACING}"
                ));
            }
        }
    }
    let mut far = 0;
    let mut permissible = 0;
    for i in 1..=n {
        let v = vid(i);
        if colors.near_count(v) != near[i] {
            out.push(format!(
                "near count of {v} is {}, recount {}",
                colors.near_count(v),
                near[i]
            ));
        }
        if path.contains(v) && near[i] == 0 {
            far += 1;
        }
        if colors.is_permissible(v, path) {
            permissible += 1;
            if near[i] != 0 {
                out.push(format!("permissible {v} is near a coloured vertex"));
            }
        }
    }
    if colors.far_total() != far {
        out.push(format!("far total {} != recount {far}", colors.far_total()));
    }
    let want = colors.permissible_size(path.len());
    if permissible != want {
        out.push(format!("|Q| = {permissible}, expected {want}"));
    }
}

fn audit_greedy(state: &ProcessState, out: &mut Vec<String>) {
    let Some(book) = state.greedy() else {
        out.push("greedy mode without a type book".into());
        return;
    };
    let n = state.n();
    let colors = state.colors();
    let mut k1 = vec![0u32; n + 1];
    let mut k2 = vec![0u32; n + 1];
    for i in 1..=n {
        let v = vid(i);
        for a in colors.arcs(v).filter(|a| a.hue == Hue::Blue) {
            match colors.color(v) {
                Color::Blue => k1[a.partner.get() as usize] += 1,
                Color::Magenta => k2[a.partner.get() as usize] += 1,
                _ => {}
            }
        }
    }
    let mut types = std::collections::HashMap::new();
    let mut degrees = std::collections::HashMap::new();
    for i in 1..=n {
        let v = vid(i);
        if state.is_unsaturated(v) != book.contains(v) {
            out.push(format!("type book membership of {v} is wrong"));
        }
        if !state.is_unsaturated(v) {
            continue;
        }
        if book.type_of(v) != (k1[i], k2[i]) {
            out.push(format!(
                "{v} has type {:?}, recount ({}, {})",
                book.type_of(v),
                k1[i],
                k2[i]
            ));
        }
        *types.entry((k1[i], k2[i])).or_insert(0usize) += 1;
        *degrees.entry((k1[i] + k2[i]) as usize).or_insert(0usize) += 1;
    }
    for &(a, b, c) in &book.type_counts() {
        if types.get(&(a, b)).copied().unwrap_or(0) != c {
            out.push(format!("C[{a},{b}] = {c} disagrees with recount"));
        }
    }
    for (&(a, b), &c) in &types {
        if book.type_count(a, b) != c {
            out.push(format!("C[{a},{b}] missing from the book"));
        }
    }
    for (&d, &c) in &degrees {
        if book.degree_count(d) != c {
            out.push(format!("D[{d}] = {}, recount {c}", book.degree_count(d)));
        }
    }
    let b_total: usize = book
        .type_counts()
        .iter()
        .map(|&(a, _, c)| a as usize * c)
        .sum();
    let m_total: usize = book
        .type_counts()
        .iter()
        .map(|&(_, b, c)| b as usize * c)
        .sum();
    if b_total != colors.count(Color::Blue) {
        out.push(format!(
            "sum k1 C = {b_total} but B = {}",
            colors.count(Color::Blue)
        ));
    }
    if m_total != colors.count(Color::Magenta) {
        out.push(format!(
            "sum k2 C = {m_total} but M = {}",
            colors.count(Color::Magenta)
        ));
    }
}
