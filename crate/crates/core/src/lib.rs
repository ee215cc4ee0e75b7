//! Upward planar drawings of acyclic directed multigraphs: exact validation,
//! rotation and polarization invariants, normal processive extensions, and a
//! decision procedure for deformation equivalence.
//!
//! Coordinates use mathematical orientation (y up) and edges point downward:
//! `y` strictly decreases from tail to head along every polyline.

pub mod embedding;
pub mod equivalence;
mod error;
pub mod fixtures;
pub mod geometry;
pub mod graph;
pub mod npp;

pub use error::{Error, Result};
