//! Continuous diameter of polygonal paths and cycles, and shortcuts that
//! minimize it.
//!
//! * [`path::optimal_path_shortcut`] places one shortcut on a path in
//!   linear time.
//! * [`cycle::optimal_pair`] places two shortcuts on a convex cycle in
//!   linear time.
//! * [`oracle`] holds slow reference computations for testing.

pub mod cycle;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod path;

pub use error::{Error, Result};
pub use geometry::{
    ccw_arc, cycle_distances, path_distance, plain_diameter, ArcPosition, Chord, CycleDistances,
    CycleNetwork, Network, PathNetwork, Point, GEOMETRY_EPS,
};
