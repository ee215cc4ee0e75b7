//! Exact planar geometry of polyline drawings.
//!
//! Every predicate is decided over arbitrary-precision rationals; there is
//! no tolerance parameter anywhere in this module.

mod drawing;
mod predicates;
pub mod rational;
mod transform;
mod validate;

pub use drawing::Drawing;
pub use predicates::{
    clockwise_from_up, in_segment_interior, intersect_segments, on_segment, orientation,
    point_segment_dist2, segment_segment_dist2, Point, SegmentIntersection,
};
pub use rational::Rational;
pub use transform::{mirror_x, transform, Transform};
pub use validate::{
    min_clearance, validate_drawing, validate_progressive, PlaneBox, ValidationReport, Violation,
    ViolationCode,
};

pub(crate) use validate::{min_clearance_unchecked, nearest_feature_dist2, require_valid};
