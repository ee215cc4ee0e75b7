use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};

use super::drawing::Drawing;
use super::predicates::{
    in_segment_interior, intersect_segments, point_segment_dist2, Point, SegmentIntersection,
};
use super::rational::Rational;

/// Fixed enumeration of everything that can make a drawing invalid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationCode {
    /// Two vertices share a position.
    CoincidentVertices,
    /// A bend sits on a vertex position.
    BendOnVertex,
    /// y fails to strictly decrease along an edge.
    NotMonotone,
    /// A vertex lies in the relative interior of a segment.
    VertexOnEdge,
    /// Two segments meet at a point they are not allowed to share.
    Crossing,
    /// Two segments share a collinear piece of positive length.
    Overlap,
    OutsideBox,
    NonLeafOnHorizontalBoundary,
    VertexOnVerticalBoundary,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        f.write_str(s.as_str().unwrap())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    /// Offending vertex and/or edge ids.
    pub ids: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub at: Option<Point>,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            ok: violations.is_empty(),
            violations,
        }
    }
}

/// One straight piece of an edge polyline.
#[derive(Clone, Debug)]
pub(crate) struct Segment<'a> {
    pub edge: &'a EdgeId,
    pub index: usize,
    pub a: Point,
    pub b: Point,
}

pub(crate) fn segments(drawing: &Drawing) -> Vec<Segment<'_>> {
    let mut out = Vec::new();
    for e in drawing.graph().edges() {
        let pts = drawing.polyline(e);
        for (index, w) in pts.windows(2).enumerate() {
            out.push(Segment {
                edge: &e.id,
                index,
                a: w[0].clone(),
                b: w[1].clone(),
            });
        }
    }
    out
}

fn violation(
    code: ViolationCode,
    ids: Vec<String>,
    at: Option<Point>,
    message: String,
) -> Violation {
    Violation {
        code,
        ids,
        at,
        message,
    }
}

/// Checks every invariant of an upward planar drawing.
///
/// Scan order is fixed: vertex checks by vertex id, then edges by id with
/// segments in polyline order. For each pair of edges only the first
/// offending segment pair is reported.
pub fn validate_drawing(drawing: &Drawing) -> ValidationReport {
    let graph = drawing.graph();
    let mut out = Vec::new();

    let mut by_point: BTreeMap<&Point, &VertexId> = BTreeMap::new();
    for (v, p) in drawing.positions() {
        if let Some(w) = by_point.insert(p, v) {
            out.push(violation(
                ViolationCode::CoincidentVertices,
                vec![w.to_string(), v.to_string()],
                Some(p.clone()),
                format!("vertices `{w}` and `{v}` share a position"),
            ));
        }
    }

    for e in graph.edges() {
        for (i, b) in drawing.bends(&e.id).iter().enumerate() {
            if let Some(v) = by_point.get(b) {
                out.push(violation(
                    ViolationCode::BendOnVertex,
                    vec![e.id.to_string(), v.to_string()],
                    Some(b.clone()),
                    format!("bend {i} of edge `{}` lies on vertex `{v}`", e.id),
                ));
            }
        }
        let pts = drawing.polyline(e);
        if let Some(i) = pts.windows(2).position(|w| w[1].y >= w[0].y) {
            out.push(violation(
                ViolationCode::NotMonotone,
                vec![e.id.to_string()],
                Some(pts[i + 1].clone()),
                format!(
                    "y does not strictly decrease along edge `{}` at point {}",
                    e.id,
                    i + 1
                ),
            ));
        }
    }

    let segs = segments(drawing);
    for s in &segs {
        for (v, p) in drawing.positions() {
            if in_segment_interior(p, &s.a, &s.b) {
                out.push(violation(
                    ViolationCode::VertexOnEdge,
                    vec![s.edge.to_string(), v.to_string()],
                    Some(p.clone()),
                    format!(
                        "vertex `{v}` lies inside segment {} of edge `{}`",
                        s.index, s.edge
                    ),
                ));
            }
        }
    }

    let mut reported: std::collections::BTreeSet<(&EdgeId, &EdgeId)> = Default::default();
    for (i, s) in segs.iter().enumerate() {
        for t in &segs[i + 1..] {
            if reported.contains(&(s.edge, t.edge)) {
                continue;
            }
            let hit = intersect_segments(&s.a, &s.b, &t.a, &t.b);
            let bad = match &hit {
                SegmentIntersection::None => None,
                SegmentIntersection::Overlap(p, _) => Some((ViolationCode::Overlap, p.clone())),
                SegmentIntersection::Point(p) => {
                    let allowed = if s.edge == t.edge {
                        t.index == s.index + 1 && p == &s.b
                    } else {
                        let (es, et) = (graph.edge(s.edge).unwrap(), graph.edge(t.edge).unwrap());
                        [&es.tail, &es.head]
                            .into_iter()
                            .filter(|v| *v == &et.tail || *v == &et.head)
                            .any(|v| drawing.position(v) == p)
                    };
                    (!allowed).then(|| (ViolationCode::Crossing, p.clone()))
                }
            };
            if let Some((code, p)) = bad {
                reported.insert((s.edge, t.edge));
                out.push(violation(
                    code,
                    vec![s.edge.to_string(), t.edge.to_string()],
                    Some(p),
                    format!(
                        "segment {} of edge `{}` and segment {} of edge `{}` {}",
                        s.index,
                        s.edge,
                        t.index,
                        t.edge,
                        if code == ViolationCode::Overlap {
                            "overlap"
                        } else {
                            "intersect"
                        }
                    ),
                ));
            }
        }
    }
    ValidationReport::from_violations(out)
}

pub(crate) fn require_valid(drawing: &Drawing) -> Result<()> {
    let report = validate_drawing(drawing);
    if report.ok {
        Ok(())
    } else {
        Err(Error::InvalidDrawing(Box::new(report)))
    }
}

/// Axis-aligned box with non-empty interior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBox {
    x_min: Rational,
    x_max: Rational,
    y_min: Rational,
    y_max: Rational,
}

impl PlaneBox {
    pub fn new(x_min: Rational, x_max: Rational, y_min: Rational, y_max: Rational) -> Result<Self> {
        if x_min >= x_max || y_min >= y_max {
            return Err(Error::Domain(
                "plane box must have a non-empty interior".into(),
            ));
        }
        Ok(PlaneBox {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    pub fn x_min(&self) -> &Rational {
        &self.x_min
    }
    pub fn x_max(&self) -> &Rational {
        &self.x_max
    }
    pub fn y_min(&self) -> &Rational {
        &self.y_min
    }
    pub fn y_max(&self) -> &Rational {
        &self.y_max
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }
}

/// Checks the boxed condition: everything inside the closed box, only leaves
/// on the top and bottom sides, no vertex on the left and right sides.
pub fn validate_progressive(drawing: &Drawing, bx: &PlaneBox) -> Result<ValidationReport> {
    require_valid(drawing)?;
    let graph = drawing.graph();
    let mut out = Vec::new();
    for (v, p) in drawing.positions() {
        if !bx.contains(p) {
            out.push(violation(
                ViolationCode::OutsideBox,
                vec![v.to_string()],
                Some(p.clone()),
                format!("vertex `{v}` lies outside the box"),
            ));
            continue;
        }
        if p.x == bx.x_min || p.x == bx.x_max {
            out.push(violation(
                ViolationCode::VertexOnVerticalBoundary,
                vec![v.to_string()],
                Some(p.clone()),
                format!("vertex `{v}` lies on a vertical side of the box"),
            ));
        } else if (p.y == bx.y_min || p.y == bx.y_max) && graph.degree(v) != 1 {
            out.push(violation(
                ViolationCode::NonLeafOnHorizontalBoundary,
                vec![v.to_string()],
                Some(p.clone()),
                format!("vertex `{v}` on a horizontal side of the box is not a leaf"),
            ));
        }
    }
    for e in graph.edges() {
        if let Some(p) = drawing.bends(&e.id).iter().find(|p| !bx.contains(p)) {
            out.push(violation(
                ViolationCode::OutsideBox,
                vec![e.id.to_string()],
                Some(p.clone()),
                format!("edge `{}` leaves the box", e.id),
            ));
        }
    }
    Ok(ValidationReport::from_violations(out))
}

/// Smallest squared distance between two drawing features that are not
/// forced together by incidence. Features are polyline points (vertices and
/// bends) and segments; a point is adjacent to the segments it ends, two
/// segments are adjacent when they share an end, and two points are adjacent
/// when they are the ends of one segment. `None` stands for an
/// unbounded clearance (no non-adjacent pair exists).
pub fn min_clearance(drawing: &Drawing) -> Result<Option<Rational>> {
    require_valid(drawing)?;
    Ok(min_clearance_unchecked(drawing))
}

pub(crate) fn min_clearance_unchecked(drawing: &Drawing) -> Option<Rational> {
    let lattice = Lattice::new(drawing);
    let pts = &lattice.points;
    let mut best: Option<(BigInt, BigInt)> = None;
    let mut offer = |num: BigInt, den: BigInt| {
        if best.as_ref().is_none_or(|(bn, bd)| &num * bd < bn * &den) {
            best = Some((num, den));
        }
    };
    // the two ends of one segment are adjacent features
    let joined: BTreeSet<(usize, usize)> = lattice
        .segments
        .iter()
        .flat_map(|&(a, b)| [(a, b), (b, a)])
        .collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if !joined.contains(&(i, j)) {
                offer(dist2(&pts[i], &pts[j]), BigInt::one());
            }
        }
        for &(a, b) in &lattice.segments {
            if i != a && i != b {
                let (num, den) = point_segment(&pts[i], &pts[a], &pts[b]);
                offer(num, den);
            }
        }
    }
    // two disjoint segments are closest at an endpoint of one of them, and
    // every such endpoint distance was offered above; only a meeting point
    // is left to detect
    for (k, &(a, b)) in lattice.segments.iter().enumerate() {
        for &(c, d) in &lattice.segments[k + 1..] {
            if a != c && a != d && b != c && b != d && meet(&pts[a], &pts[b], &pts[c], &pts[d]) {
                offer(BigInt::zero(), BigInt::one());
            }
        }
    }
    best.map(|(num, den)| Rational::new(num, den * &lattice.scale * &lattice.scale))
}

/// Polyline points scaled by a common denominator to integers. Coinciding
/// points share an index.
struct Lattice {
    scale: BigInt,
    points: Vec<(BigInt, BigInt)>,
    segments: Vec<(usize, usize)>,
}

impl Lattice {
    fn new(drawing: &Drawing) -> Self {
        let mut index: BTreeMap<&Point, usize> = BTreeMap::new();
        let mut order: Vec<&Point> = Vec::new();
        let all = drawing
            .positions()
            .values()
            .chain(drawing.all_bends().values().flatten());
        for p in all {
            index.entry(p).or_insert_with(|| {
                order.push(p);
                order.len() - 1
            });
        }
        let scale = order
            .iter()
            .flat_map(|p| [p.x.denom(), p.y.denom()])
            .fold(BigInt::one(), |l, d| l.lcm(d));
        let to_int = |r: &Rational| r.numer() * (&scale / r.denom());
        let points = order.iter().map(|p| (to_int(&p.x), to_int(&p.y))).collect();
        let mut segments = Vec::new();
        for e in drawing.graph().edges() {
            let line = drawing.polyline(e);
            for w in line.windows(2) {
                segments.push((index[&w[0]], index[&w[1]]));
            }
        }
        Lattice {
            scale,
            points,
            segments,
        }
    }
}

type IPoint = (BigInt, BigInt);

fn dist2(p: &IPoint, q: &IPoint) -> BigInt {
    let (dx, dy) = (&p.0 - &q.0, &p.1 - &q.1);
    &dx * &dx + &dy * &dy
}

fn cross(o: &IPoint, a: &IPoint, b: &IPoint) -> BigInt {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

/// Squared distance from `p` to segment `a b` as a fraction.
fn point_segment(p: &IPoint, a: &IPoint, b: &IPoint) -> (BigInt, BigInt) {
    let (abx, aby) = (&b.0 - &a.0, &b.1 - &a.1);
    let dot = (&p.0 - &a.0) * &abx + (&p.1 - &a.1) * &aby;
    let len2 = &abx * &abx + &aby * &aby;
    if !dot.is_positive() {
        (dist2(p, a), BigInt::one())
    } else if dot >= len2 {
        (dist2(p, b), BigInt::one())
    } else {
        let c = cross(a, b, p);
        (&c * &c, len2)
    }
}

fn in_box(p: &IPoint, a: &IPoint, b: &IPoint) -> bool {
    p.0 >= a.0.clone().min(b.0.clone())
        && p.0 <= a.0.clone().max(b.0.clone())
        && p.1 >= a.1.clone().min(b.1.clone())
        && p.1 <= a.1.clone().max(b.1.clone())
}

/// Whether closed segments `a b` and `c d` share a point.
fn meet(a: &IPoint, b: &IPoint, c: &IPoint, d: &IPoint) -> bool {
    use num_bigint::Sign::NoSign;
    let (o1, o2) = (cross(a, b, c).sign(), cross(a, b, d).sign());
    let (o3, o4) = (cross(c, d, a).sign(), cross(c, d, b).sign());
    let proper =
        o1 != NoSign && o2 != NoSign && o1 != o2 && o3 != NoSign && o4 != NoSign && o3 != o4;
    proper
        || (o1 == NoSign && in_box(c, a, b))
        || (o2 == NoSign && in_box(d, a, b))
        || (o3 == NoSign && in_box(a, c, d))
        || (o4 == NoSign && in_box(b, c, d))
}

/// Squared distance from `p` to the nearest feature of the drawing that does
/// not contain `p` itself, optionally skipping segments that end at `p`.
pub(crate) fn nearest_feature_dist2(drawing: &Drawing, p: &Point) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    let mut offer = |d: Rational| {
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    };
    for q in drawing.positions().values() {
        if q != p {
            offer(p.dist2(q));
        }
    }
    for s in segments(drawing) {
        if p != &s.a && p != &s.b {
            offer(point_segment_dist2(p, &s.a, &s.b));
        }
    }
    best
}
