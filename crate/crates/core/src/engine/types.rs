use std::fmt;

use serde::{Deserialize, Serialize};

/// A vertex of `[n] = {1, ..., n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(u32);

impl VertexId {
    /// Panics on 0; vertex ids are 1-based.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "vertex ids start at 1");
        VertexId(index)
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub(crate) fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One semi-random edge `(u_t, v_t)`: the square arrives at random, the circle is
/// chosen by the player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub step: u64,
    pub square: VertexId,
    pub circle: VertexId,
    /// Whether the edge currently belongs to the path (or final cycle).
    pub used: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hue {
    Red,
    Blue,
}

/// Colour classes of path vertices. The first three belong to the
/// fully randomized strategy, `Blue`/`Red`/`Magenta` to the degree-greedy one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Uncolored,
    OneRed,
    TwoRed,
    Blue,
    Red,
    Magenta,
}

impl Color {
    pub(crate) const COUNT: usize = 6;

    pub(crate) fn slot(self) -> usize {
        self as usize
    }

    pub fn is_colored(self) -> bool {
        self != Color::Uncolored
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorMode {
    Randomized,
    Greedy,
}

/// What a strategy did with one square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepOutcome {
    /// The square was unsaturated and joined the path at the head.
    Extend { square: VertexId, circle: VertexId },
    /// The square sat next to the coloured vertex `via`, whose coloured partner
    /// `absorbed` was inserted between them.
    Augment {
        square: VertexId,
        via: VertexId,
        absorbed: VertexId,
    },
    /// The arc was coloured and parked for a future augmentation.
    Color {
        square: VertexId,
        circle: VertexId,
        hue: Hue,
    },
    /// The arc is not used in the construction.
    Pass { square: VertexId, circle: VertexId },
}

impl StepOutcome {
    pub fn grows_path(&self) -> bool {
        matches!(
            self,
            StepOutcome::Extend { .. } | StepOutcome::Augment { .. }
        )
    }

    pub fn square(&self) -> VertexId {
        match *self {
            StepOutcome::Extend { square, .. }
            | StepOutcome::Augment { square, .. }
            | StepOutcome::Color { square, .. }
            | StepOutcome::Pass { square, .. } => square,
        }
    }
}

/// Branch selected by the case analysis for a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Unsaturated,
    AdjacentToColored(VertexId),
    Permissible,
    /// Greedy mode: square on a red vertex.
    ColoredRed,
    /// Greedy mode: square on a blue vertex.
    ColoredBlue,
    /// Randomized mode: square on a one-red vertex.
    ColoredOneRed,
    Pass,
}
