//! Grid-world path planning and benchmarking.
//!
//! A 2D/3D occupancy-grid world model, procedural map generators, ten
//! classical planners with execution traces, standardized metrics,
//! batch analysis procedures, map and dataset file formats, and a
//! subprocess protocol for benchmarking external planners.

pub mod dt;
pub mod geom;
pub mod grid;
pub mod rng;
pub mod scalar;

pub use grid::{
    is_solvable, line_of_sight, neighbors, Connectivity, GridError, GridMap, MoveSet, Path,
    Point, Scenario,
};
pub use scalar::{Real, Scalar};
