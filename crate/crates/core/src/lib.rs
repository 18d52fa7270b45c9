//! Strategies for building a Hamiltonian cycle in the semi-random graph
//! process, the differential equations that predict their running time, and a
//! counting lower bound for any strategy.

pub mod engine;
pub mod error;
pub mod harness;
pub mod lowerbound;
pub mod ode;
pub mod strategy;

pub use error::{Error, Result};
