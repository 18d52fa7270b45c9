//! The mutable state of one semi-random process run and the two path-growing
//! moves. Strategies decide *which* move to make; this module keeps every
//! derived structure consistent when they do.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::color::{ColorState, ColoredArc, SPACING};
use super::greedy::GreedyBook;
use super::index::IndexedSet;
use super::path::PathState;
use super::types::{Arc, CaseTag, Color, ColorMode, Hue, StepOutcome, VertexId};
use crate::error::{Error, Result};

/// Draws uniformly from `[n]`. `gen_range` rejects the biased tail, so there
/// is no modulo bias.
pub fn draw_uniform<R: Rng + ?Sized>(rng: &mut R, n: usize) -> VertexId {
    VertexId::new(rng.gen_range(1..=n as u32))
}

#[derive(Debug, Clone)]
pub struct ProcessState {
    n: usize,
    seed: u64,
    rng: ChaCha8Rng,
    step: u64,
    arcs: Vec<Arc>,
    path: PathState,
    colors: ColorState,
    unsaturated: IndexedSet,
    square_count: Vec<u32>,
    circle_count: Vec<u32>,
    greedy: Option<GreedyBook>,
    closed: bool,
    spacing: bool,
    scratch: Vec<VertexId>,
    window: Vec<VertexId>,
}

impl ProcessState {
    pub fn new(n: usize, seed: u64, mode: ColorMode) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidConfig(format!(
                "n = {n}: a Hamiltonian cycle needs at least 3 vertices"
            )));
        }
        if n >= u32::MAX as usize {
            return Err(Error::InvalidConfig(format!("n = {n} is too large")));
        }
        Ok(ProcessState {
            n,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            step: 0,
            arcs: Vec::with_capacity(3 * n),
            path: PathState::new(n),
            colors: ColorState::new(n, mode),
            unsaturated: IndexedSet::full(n),
            square_count: vec![0; n + 1],
            circle_count: vec![0; n + 1],
            greedy: (mode == ColorMode::Greedy).then(|| GreedyBook::new(n)),
            closed: false,
            spacing: true,
            scratch: Vec::with_capacity(8),
            window: Vec::with_capacity(16),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn path(&self) -> &PathState {
        &self.path
    }

    pub fn colors(&self) -> &ColorState {
        &self.colors
    }

    pub fn mode(&self) -> ColorMode {
        self.colors.mode()
    }

    pub fn greedy(&self) -> Option<&GreedyBook> {
        self.greedy.as_ref()
    }

    pub(crate) fn greedy_mut(&mut self) -> Option<&mut GreedyBook> {
        self.greedy.as_mut()
    }

    pub fn unsaturated(&self) -> &IndexedSet {
        &self.unsaturated
    }

    /// `U_t`; always `n - X(t)`.
    pub fn unsaturated_count(&self) -> usize {
        self.unsaturated.len()
    }

    pub fn is_unsaturated(&self, v: VertexId) -> bool {
        self.unsaturated.contains(v)
    }

    pub fn square_count(&self, v: VertexId) -> u32 {
        self.square_count[v.idx()]
    }

    pub fn circle_count(&self, v: VertexId) -> u32 {
        self.circle_count[v.idx()]
    }

    /// Whether the used arcs have been closed into a cycle.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Whether coloured vertices are kept at path distance at least 3 and the
    /// permissible-set identity holds. The clean-up stage gives this up.
    pub fn spacing_enforced(&self) -> bool {
        self.spacing
    }

    pub(crate) fn relax_spacing(&mut self) {
        self.spacing = false;
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// The random square `u_{t+1}`.
    pub fn draw_square(&mut self) -> VertexId {
        draw_uniform(&mut self.rng, self.n)
    }

    pub fn draw_any(&mut self) -> VertexId {
        draw_uniform(&mut self.rng, self.n)
    }

    pub fn sample_unsaturated(&mut self) -> Option<VertexId> {
        self.unsaturated.sample(&mut self.rng)
    }

    /// Uniform among unsaturated vertices of minimum blue degree.
    pub fn sample_min_blue(&mut self) -> Option<VertexId> {
        let book = self.greedy.as_mut()?;
        book.buckets_mut().sample_min(&mut self.rng)
    }

    pub(crate) fn record_arc(&mut self, square: VertexId, circle: VertexId, used: bool) -> usize {
        self.step += 1;
        self.arcs.push(Arc {
            step: self.step,
            square,
            circle,
            used,
        });
        self.square_count[square.idx()] += 1;
        self.circle_count[circle.idx()] += 1;
        self.arcs.len() - 1
    }

    pub(crate) fn set_used(&mut self, arc: usize, used: bool) {
        self.arcs[arc].used = used;
    }

    /// Case analysis shared by both strategies.
    pub fn classify_square(&self, u: VertexId) -> CaseTag {
        if !self.path.contains(u) {
            return CaseTag::Unsaturated;
        }
        for nb in [self.path.left(u), self.path.right(u)]
            .into_iter()
            .flatten()
        {
            if self.colors.color(nb).is_colored() {
                return CaseTag::AdjacentToColored(nb);
            }
        }
        if self.colors.is_permissible(u, &self.path) {
            return CaseTag::Permissible;
        }
        match self.colors.color(u) {
            Color::OneRed => CaseTag::ColoredOneRed,
            Color::Red => CaseTag::ColoredRed,
            Color::Blue => CaseTag::ColoredBlue,
            _ => CaseTag::Pass,
        }
    }

    /// Records an arc that takes no part in the construction.
    pub fn pass(&mut self, square: VertexId, circle: VertexId) -> StepOutcome {
        self.record_arc(square, circle, false);
        StepOutcome::Pass { square, circle }
    }

    /// Greedy path extension at the head. On an empty path `u` starts the path
    /// and the circle is drawn uniformly, as in a pass.
    pub fn extend_path(&mut self, u: VertexId) -> Result<StepOutcome> {
        if !self.is_unsaturated(u) {
            return Err(Error::Precondition(format!(
                "extend_path: {u} is saturated"
            )));
        }
        let Some(head) = self.path.head() else {
            let circle = self.draw_any();
            self.record_arc(u, circle, false);
            self.absorb(u);
            self.path.start(u);
            self.colors.joined_path(u);
            return Ok(StepOutcome::Extend { square: u, circle });
        };
        let arc = self.record_arc(u, head, true);
        self.absorb(u);
        self.collect_window(&[head]);
        self.unregister_window();
        self.path.push_head(u, arc);
        self.colors.joined_path(u);
        self.register_window();
        Ok(StepOutcome::Extend {
            square: u,
            circle: head,
        })
    }

    /// Path augmentation: `u` is a path neighbour of the coloured vertex `x`;
    /// one coloured partner `r` of `x` is inserted between them.
    pub fn augment_path(&mut self, u: VertexId, x: VertexId) -> Result<StepOutcome> {
        if !self.path.contains(u) {
            return Err(Error::Precondition(format!(
                "augment_path: {u} is not on the path"
            )));
        }
        if self.path.left(u) != Some(x) && self.path.right(u) != Some(x) {
            return Err(Error::Precondition(format!(
                "augment_path: {x} is not a path neighbour of {u}"
            )));
        }
        let chosen = self.augmenting_arc(x).ok_or_else(|| {
            Error::Precondition(format!("augment_path: {x} holds no coloured arc"))
        })?;
        let r = chosen.partner;
        let arc_ur = self.record_arc(u, r, true);
        self.set_used(chosen.arc, true);

        let (_, old, new) = self
            .colors
            .remove_arc(x, |a| a.arc == chosen.arc)
            .expect("chosen arc present");
        self.after_removal(x, old, new, chosen);
        self.absorb(r);

        self.collect_window(&[u, x]);
        self.unregister_window();
        let cut = self.path.insert_between(u, x, r, arc_ur, chosen.arc);
        self.colors.joined_path(r);
        self.register_window();
        self.set_used(cut, false);
        Ok(StepOutcome::Augment {
            square: u,
            via: x,
            absorbed: r,
        })
    }

    /// The oldest coloured arc in randomized mode; in greedy mode the blue arc
    /// whenever there is one.
    fn augmenting_arc(&self, x: VertexId) -> Option<ColoredArc> {
        let arcs = self.colors.arcs(x);
        match self.colors.mode() {
            ColorMode::Randomized => arcs.min_by_key(|a| a.arc),
            ColorMode::Greedy => arcs.min_by_key(|a| (a.hue != Hue::Blue, a.arc)),
        }
    }

    /// Colours the new arc `u -> v`.
    pub fn color_arc(&mut self, u: VertexId, v: VertexId, hue: Hue) -> Result<StepOutcome> {
        if !self.path.contains(u) {
            return Err(Error::Precondition(format!(
                "color_arc: {u} is not on the path"
            )));
        }
        if !self.is_unsaturated(v) {
            return Err(Error::Precondition(format!("color_arc: {v} is saturated")));
        }
        if !self.colors.accepts(u, hue) {
            return Err(Error::Precondition(format!(
                "color_arc: {u} ({:?}) cannot take a {hue:?} arc in {:?} mode",
                self.colors.color(u),
                self.colors.mode()
            )));
        }
        let arc = self.record_arc(u, v, false);
        let (old, new) = self.colors.add_arc(
            u,
            ColoredArc {
                partner: v,
                hue,
                arc,
            },
        );
        if !old.is_colored() {
            self.colors.register(u, &self.path, &mut self.scratch);
        }
        if let Some(book) = self.greedy.as_mut() {
            match hue {
                Hue::Blue => book.add_blue(v, new == Color::Magenta),
                Hue::Red => {
                    if old == Color::Blue {
                        let blue = blue_partner(&self.colors, u).expect("blue vertex");
                        book.shift(blue, true);
                    }
                }
            }
        }
        Ok(StepOutcome::Color {
            square: u,
            circle: v,
            hue,
        })
    }

    /// Takes `r` off the unsaturated list and uncolours every coloured arc
    /// ending at it.
    fn absorb(&mut self, r: VertexId) {
        self.unsaturated.remove(r);
        if let Some(book) = self.greedy.as_mut() {
            book.remove(r);
        }
        self.uncolor_incoming(r);
    }

    fn uncolor_incoming(&mut self, r: VertexId) {
        while let Some(holder) = self.colors.first_holder(r) {
            let (arc, old, new) = self
                .colors
                .remove_arc(holder, |a| a.partner == r)
                .expect("incoming arc present");
            self.after_removal(holder, old, new, arc);
        }
    }

    fn after_removal(&mut self, holder: VertexId, old: Color, new: Color, removed: ColoredArc) {
        if old.is_colored() && !new.is_colored() {
            self.colors
                .unregister(holder, &self.path, &mut self.scratch);
        }
        if let Some(book) = self.greedy.as_mut() {
            // A magenta vertex that lost its red arc is blue again.
            if old == Color::Magenta && new == Color::Blue && removed.hue == Hue::Red {
                let blue = blue_partner(&self.colors, holder).expect("blue arc kept");
                book.shift(blue, false);
            }
        }
    }

    fn collect_window(&mut self, centers: &[VertexId]) {
        self.window.clear();
        for &c in centers {
            self.scratch.clear();
            self.path.ball(c, SPACING, &mut self.scratch);
            for &w in &self.scratch {
                if self.colors.color(w).is_colored() && !self.window.contains(&w) {
                    self.window.push(w);
                }
            }
        }
    }

    fn unregister_window(&mut self) {
        for i in 0..self.window.len() {
            let w = self.window[i];
            self.colors.unregister(w, &self.path, &mut self.scratch);
        }
    }

    fn register_window(&mut self) {
        for i in 0..self.window.len() {
            let w = self.window[i];
            self.colors.register(w, &self.path, &mut self.scratch);
        }
    }

    /// Uncolours every coloured arc.
    pub(crate) fn clear_colors(&mut self) {
        let unsat: Vec<VertexId> = self.unsaturated.iter().collect();
        for r in unsat {
            self.uncolor_incoming(r);
        }
        debug_assert_eq!(self.colors.colored_count(), 0);
    }

    /// Hands a degree-greedy state over to the fully randomized strategy.
    /// Blue and red vertices become one-red, magenta vertices two-red.
    pub fn convert_to_randomized(&mut self) {
        self.colors.convert_to_randomized();
        self.greedy = None;
    }

    /// Closes a Hamiltonian path `head ... x y ... tail` into a cycle by
    /// dropping `x -- y` and using the arcs `y -> head` and `x -> tail`.
    pub(crate) fn close_cycle(&mut self, x: VertexId, arc_y_head: usize, arc_x_tail: usize) {
        debug_assert_eq!(self.unsaturated_count(), 0);
        let cut = self.path.right_arc(x).expect("x is not the tail");
        self.set_used(cut, false);
        self.set_used(arc_y_head, true);
        self.set_used(arc_x_tail, true);
        self.closed = true;
    }
}

fn blue_partner(colors: &ColorState, v: VertexId) -> Option<VertexId> {
    colors
        .arcs(v)
        .find(|a| a.hue == Hue::Blue)
        .map(|a| a.partner)
}
