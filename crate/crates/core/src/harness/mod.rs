//! Running configured simulations, replicating them, comparing them with the
//! ODE predictions and writing the results to disk.

mod compare;
mod export;
mod montecarlo;
mod run;
mod structures;
mod verify;

pub use compare::{compare_to_ode, SupNorm};
pub use export::{
    read_checkpoints_csv, read_json, read_trajectory_csv, write_checkpoints_csv, write_json,
    write_trajectory_csv,
};
pub use montecarlo::{monte_carlo, thread_count, CheckpointMean, MonteCarloReport, ReplicaOutcome};
pub use run::{run, Checkpoint, RunConfig, RunFailure, RunSummary};
pub use structures::{structure_report, StructureReport, StructureRow};
pub use verify::{verify_run, VerifyReport, MAX_REPORTED};
