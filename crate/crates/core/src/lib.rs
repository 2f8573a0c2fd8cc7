//! Evaluation and metaheuristic optimization of reinforced-concrete
//! cantilever retaining walls under pseudo-static seismic loading.
//!
//! The crate is organized around a fixed 12-variable design encoding (eight
//! geometry lengths, four discrete reinforcement indices):
//!
//! - [`wall`], [`catalog`]: design variables, bounds, loading cases, and the
//!   223-entry reinforcement pool;
//! - [`pressure`], [`limit_state`]: Mononobe-Okabe earth pressures and the 26
//!   stability/strength/geometry constraints;
//! - [`objective`]: cost/weight/CO₂ take-offs and the penalized fitness;
//! - [`fuzzy`]: a small Mamdani inference engine with the four bundled rule
//!   tables that drive parameter adaptation and operator selection;
//! - [`optimizer`]: the fuzzy-adaptive empire-based search;
//! - [`baseline`]: PSO and DE references sharing the same fitness path;
//! - [`stats`]: Friedman ranks and the two-tailed Wilcoxon signed-rank test;
//! - [`experiment`]: seeded run batches and their CSV artifacts.

pub mod baseline;
pub mod catalog;
pub mod experiment;
pub mod fuzzy;
pub mod limit_state;
pub mod objective;
pub mod optimizer;
pub mod pressure;
pub mod problem;
pub mod stats;
pub mod wall;

pub use catalog::{Catalog, RebarChoice};
pub use objective::Objective;
pub use problem::{Evaluation, WallProblem};
pub use wall::{Bounds, DesignParameters, DesignVector, SeismicCase};
