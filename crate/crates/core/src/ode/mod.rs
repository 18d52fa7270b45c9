//! Differential equations that track the scaled random variables of both
//! strategies, and the constants extracted from them.

mod alpha;
mod greedy;
mod integrate;
mod randomized;

pub use alpha::{compute_alpha_star, AlphaOptions, AlphaStar, DEFAULT_MARGINS};
pub use greedy::{
    compute_sigma_chain, rhs_greedy_phase, ChainOptions, GreedyPhaseSystem, PhaseLayout,
    SigmaChain, PHASE_FLOOR,
};
pub use integrate::{
    integrate, ExitReason, IntegrateOptions, OdeSystem, Trajectory, EXIT_TOLERANCE,
};
pub use randomized::{rhs_randomized, RandomizedSystem, TIME_LIMIT};
