//! Maximum edge-weight k-plex partitioning: graph handling, feasibility
//! semantics, ILP model construction with LP export, and an exact
//! branch-and-bound solver.

pub mod cli;
pub mod config;
pub mod graph;
pub mod model;
pub mod partition;
pub mod report;
pub mod semantics;
pub mod solver;

pub use config::{ConfigError, SolverConfig};
pub use graph::{GraphError, WeightedGraph};
pub use partition::Partition;
pub use solver::{solve_exact, SolveResult, Status};
