//! The semi-random process: arc log, growing path, coloured arcs and the
//! permissible set, with the extension and augmentation moves.

mod audit;
mod color;
mod greedy;
mod hamilton;
mod index;
mod path;
mod process;
mod types;

pub use audit::audit;
pub use color::{ColorState, ColoredArc, SPACING};
pub use greedy::GreedyBook;
pub use hamilton::is_hamiltonian_cycle;
pub use index::{DegreeBuckets, Fenwick, IndexedSet};
pub use path::{PathIter, PathState, Side};
pub use process::{draw_uniform, ProcessState};
pub use types::{Arc, CaseTag, Color, ColorMode, Hue, StepOutcome, VertexId};
