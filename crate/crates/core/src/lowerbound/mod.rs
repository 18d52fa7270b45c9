//! The lower-bound side: the bound function `f`, its unit crossing `beta`,
//! the limiting densities of the structures that waste squares, and an
//! exact counter for those structures on a recorded history.

mod bound;
mod structures;

pub use bound::{closed_form, eval_f, find_beta, Structure, BETA_BRACKET, BETA_TOLERANCE};
pub use structures::{count_structures, usable_squares_bound, HistoryLog, StructureCounts};
