use num_traits::Signed;

use crate::error::{Error, Result};

use super::drawing::Drawing;
use super::predicates::Point;
use super::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Translate {
        dx: Rational,
        dy: Rational,
    },
    /// Both factors must be positive.
    ScalePositive {
        sx: Rational,
        sy: Rational,
    },
    /// `x -> -x`; reverses every rotation.
    MirrorX,
}

impl Transform {
    pub fn apply_point(&self, p: &Point) -> Point {
        match self {
            Transform::Translate { dx, dy } => Point::new(&p.x + dx, &p.y + dy),
            Transform::ScalePositive { sx, sy } => Point::new(&p.x * sx, &p.y * sy),
            Transform::MirrorX => Point::new(-&p.x, p.y.clone()),
        }
    }
}

/// Maps every coordinate of the drawing exactly.
pub fn transform(drawing: &Drawing, map: &Transform) -> Result<Drawing> {
    if let Transform::ScalePositive { sx, sy } = map {
        if !sx.is_positive() || !sy.is_positive() {
            return Err(Error::Domain("scale factors must be positive".into()));
        }
    }
    Ok(drawing.map_points(|p| map.apply_point(p)))
}

pub fn mirror_x(drawing: &Drawing) -> Drawing {
    drawing.map_points(|p| Transform::MirrorX.apply_point(p))
}
