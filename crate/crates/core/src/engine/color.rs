//! Colour classes, coloured arcs and the permissible set.
//!
//! The permissible set is never materialised. A path vertex is *far* when no
//! coloured vertex lies within path distance 2; the permissible set is the far
//! set minus its `excess` largest-indexed members, where the excess brings the
//! size down to `X - 5L`. Far membership is tracked with per-vertex counters of
//! nearby coloured vertices and a Fenwick tree over vertex ids.

use super::index::Fenwick;
use super::path::PathState;
use super::types::{Color, ColorMode, Hue, VertexId};

/// A coloured arc as seen from its path endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoredArc {
    pub partner: VertexId,
    pub hue: Hue,
    /// Index in the process arc log.
    pub arc: usize,
}

#[derive(Debug, Clone)]
pub struct ColorState {
    mode: ColorMode,
    color: Vec<Color>,
    slots: Vec<[Option<ColoredArc>; 2]>,
    /// For each unsaturated vertex, the path vertices holding a coloured arc to
    /// it (one entry per arc).
    incoming: Vec<Vec<u32>>,
    counts: [usize; Color::COUNT],
    near: Vec<u16>,
    far: Fenwick,
    far_total: usize,
}

/// Radius of the exclusion zone around coloured vertices.
pub const SPACING: usize = 2;

impl ColorState {
    pub fn new(n: usize, mode: ColorMode) -> Self {
        ColorState {
            mode,
            color: vec![Color::Uncolored; n + 1],
            slots: vec![[None, None]; n + 1],
            incoming: vec![Vec::new(); n + 1],
            counts: [0; Color::COUNT],
            near: vec![0; n + 1],
            far: Fenwick::new(n),
            far_total: 0,
        }
    }

    pub fn mode(&self) -> ColorMode {
        self.mode
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.color[v.idx()]
    }

    pub fn count(&self, c: Color) -> usize {
        self.counts[c.slot()]
    }

    /// Number of coloured vertices, `L(t)`.
    pub fn colored_count(&self) -> usize {
        self.counts.iter().skip(1).sum()
    }

    pub fn arcs(&self, v: VertexId) -> impl Iterator<Item = ColoredArc> + '_ {
        self.slots[v.idx()].iter().flatten().copied()
    }

    pub fn holders(&self, r: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incoming[r.idx()].iter().map(|&h| VertexId::new(h))
    }

    pub(crate) fn first_holder(&self, r: VertexId) -> Option<VertexId> {
        self.incoming[r.idx()].first().map(|&h| VertexId::new(h))
    }

    pub fn near_count(&self, v: VertexId) -> u16 {
        self.near[v.idx()]
    }

    pub fn far_total(&self) -> usize {
        self.far_total
    }

    /// `|Q_t|`: all path vertices while nothing is coloured, `X - 5L` otherwise
    /// (clamped at 0 while the path is still shorter than the exclusion zones).
    pub fn permissible_size(&self, path_len: usize) -> usize {
        let l = self.colored_count();
        if l == 0 {
            path_len
        } else {
            path_len.saturating_sub(5 * l)
        }
    }

    fn excess(&self, path_len: usize) -> usize {
        self.far_total - self.permissible_size(path_len).min(self.far_total)
    }

    pub fn is_permissible(&self, v: VertexId, path: &PathState) -> bool {
        if !path.contains(v) || self.near[v.idx()] != 0 {
            return false;
        }
        let above = self.far_total as i64 - self.far.prefix(v.idx());
        above >= self.excess(path.len()) as i64
    }

    pub(crate) fn joined_path(&mut self, v: VertexId) {
        if self.near[v.idx()] == 0 {
            self.far.add(v, 1);
            self.far_total += 1;
        }
    }

    pub(crate) fn register(&mut self, v: VertexId, path: &PathState, scratch: &mut Vec<VertexId>) {
        scratch.clear();
        path.ball(v, SPACING, scratch);
        for &w in scratch.iter() {
            let c = &mut self.near[w.idx()];
            *c += 1;
            if *c == 1 {
                self.far.add(w, -1);
                self.far_total -= 1;
            }
        }
    }

    pub(crate) fn unregister(
        &mut self,
        v: VertexId,
        path: &PathState,
        scratch: &mut Vec<VertexId>,
    ) {
        scratch.clear();
        path.ball(v, SPACING, scratch);
        for &w in scratch.iter() {
            let c = &mut self.near[w.idx()];
            debug_assert!(*c > 0);
            *c -= 1;
            if *c == 0 {
                self.far.add(w, 1);
                self.far_total += 1;
            }
        }
    }

    fn derive(&self, v: VertexId) -> Option<Color> {
        let (mut reds, mut blues) = (0, 0);
        for a in self.arcs(v) {
            match a.hue {
                Hue::Red => reds += 1,
                Hue::Blue => blues += 1,
            }
        }
        match (self.mode, blues, reds) {
            (_, 0, 0) => Some(Color::Uncolored),
            (ColorMode::Randomized, 0, 1) => Some(Color::OneRed),
            (ColorMode::Randomized, 0, 2) => Some(Color::TwoRed),
            (ColorMode::Greedy, 1, 0) => Some(Color::Blue),
            (ColorMode::Greedy, 0, 1) => Some(Color::Red),
            (ColorMode::Greedy, 1, 1) => Some(Color::Magenta),
            _ => None,
        }
    }

    fn set_color(&mut self, v: VertexId, c: Color) -> Color {
        let old = self.color[v.idx()];
        self.counts[old.slot()] -= usize::from(old.is_colored());
        self.counts[c.slot()] += usize::from(c.is_colored());
        self.color[v.idx()] = c;
        old
    }

    /// Whether `v` may take one more arc of `hue` in the current mode.
    pub fn accepts(&self, v: VertexId, hue: Hue) -> bool {
        matches!(
            (self.mode, self.color(v), hue),
            (
                ColorMode::Randomized,
                Color::Uncolored | Color::OneRed,
                Hue::Red
            ) | (ColorMode::Greedy, Color::Uncolored | Color::Red, Hue::Blue)
                | (ColorMode::Greedy, Color::Uncolored | Color::Blue, Hue::Red)
        )
    }

    /// Returns `(old, new)` colour of `holder`.
    pub(crate) fn add_arc(&mut self, holder: VertexId, arc: ColoredArc) -> (Color, Color) {
        let slots = &mut self.slots[holder.idx()];
        let free = slots
            .iter_mut()
            .find(|s| s.is_none())
            .expect("a vertex holds at most two coloured arcs");
        *free = Some(arc);
        self.incoming[arc.partner.idx()].push(holder.get());
        let new = self.derive(holder).expect("valid colour transition");
        let old = self.set_color(holder, new);
        (old, new)
    }

    /// Removes the first arc of `holder` matching `pred`.
    pub(crate) fn remove_arc(
        &mut self,
        holder: VertexId,
        pred: impl Fn(&ColoredArc) -> bool,
    ) -> Option<(ColoredArc, Color, Color)> {
        let slot = self.slots[holder.idx()]
            .iter_mut()
            .find(|s| s.as_ref().is_some_and(&pred))?;
        let arc = slot.take().expect("matched");
        let inc = &mut self.incoming[arc.partner.idx()];
        let p = inc
            .iter()
            .position(|&h| h == holder.get())
            .expect("incoming entry");
        inc.swap_remove(p);
        let new = self.derive(holder).expect("removal keeps a valid colour");
        let old = self.set_color(holder, new);
        Some((arc, old, new))
    }

    /// Switches to randomized mode, mapping blue and red to one-red and
    /// magenta to two-red; every coloured arc becomes red.
    pub(crate) fn convert_to_randomized(&mut self) {
        if self.mode == ColorMode::Randomized {
            return;
        }
        self.mode = ColorMode::Randomized;
        for v in 1..self.color.len() {
            let vid = VertexId::new(v as u32);
            if !self.color[v].is_colored() {
                continue;
            }
            for a in self.slots[v].iter_mut().flatten() {
                a.hue = Hue::Red;
            }
            let c = self.derive(vid).expect("converted colour");
            self.set_color(vid, c);
        }
    }
}
