//! Exact orientation, intersection and distance predicates.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, int, parse_rational, Rational};

/// Serialized as a pair of exact decimal (or `p/q`) strings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let parse = |t: &str| parse_rational(t).map_err(serde::de::Error::custom);
        Ok(Point::new(parse(&x)?, parse(&y)?))
    }
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, o: &Point) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn dist2(&self, o: &Point) -> Rational {
        self.sub(o).norm2()
    }

    /// Point at parameter `t` on the segment from `self` to `o`.
    pub fn lerp(&self, o: &Point, t: &Rational) -> Point {
        self.add(&o.sub(self).scale(t))
    }
}

/// Sign of the turn `a -> b -> c`: `Greater` for counterclockwise.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> Ordering {
    b.sub(a).cross(&c.sub(a)).cmp(&Rational::zero())
}

/// Whether `p` lies on the closed segment `a b` (assumed non-degenerate).
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orientation(a, b, p) == Ordering::Equal && within_box(p, a, b)
}

/// Whether `p` lies on segment `a b` but is neither endpoint.
pub fn in_segment_interior(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && on_segment(p, a, b)
}

fn within_box(p: &Point, a: &Point, b: &Point) -> bool {
    let (xl, xh) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (yl, yh) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    &p.x >= xl && &p.x <= xh && &p.y >= yl && &p.y <= yh
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SegmentIntersection {
    None,
    Point(Point),
    /// Collinear overlap of positive length, given by its two ends.
    Overlap(Point, Point),
}

/// Exact intersection of two closed, non-degenerate segments.
pub fn intersect_segments(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> SegmentIntersection {
    let d1 = orientation(q1, q2, p1);
    let d2 = orientation(q1, q2, p2);
    let d3 = orientation(p1, p2, q1);
    let d4 = orientation(p1, p2, q2);
    use Ordering::Equal;
    if d1 == Equal && d2 == Equal {
        // collinear: compare along the dominant axis of p
        let dir = p2.sub(p1);
        let key = |p: &Point| dir.dot(&p.sub(p1));
        let (mut a, mut b) = (p1.clone(), p2.clone());
        if key(&a) > key(&b) {
            std::mem::swap(&mut a, &mut b);
        }
        let (mut c, mut d) = (q1.clone(), q2.clone());
        if key(&c) > key(&d) {
            std::mem::swap(&mut c, &mut d);
        }
        let lo = if key(&a) >= key(&c) { a } else { c };
        let hi = if key(&b) <= key(&d) { b } else { d };
        return match key(&lo).cmp(&key(&hi)) {
            Ordering::Less => SegmentIntersection::Overlap(lo, hi),
            Ordering::Equal => SegmentIntersection::Point(lo),
            Ordering::Greater => SegmentIntersection::None,
        };
    }
    let straddles = |x: Ordering, y: Ordering| x == Equal || y == Equal || x != y;
    if !(straddles(d1, d2) && straddles(d3, d4)) {
        return SegmentIntersection::None;
    }
    if d1 == Equal {
        return SegmentIntersection::Point(p1.clone());
    }
    if d2 == Equal {
        return SegmentIntersection::Point(p2.clone());
    }
    if d3 == Equal {
        return SegmentIntersection::Point(q1.clone());
    }
    if d4 == Equal {
        return SegmentIntersection::Point(q2.clone());
    }
    let r = p2.sub(p1);
    let s = q2.sub(q1);
    let t = q1.sub(p1).cross(&s) / r.cross(&s);
    SegmentIntersection::Point(p1.lerp(p2, &t))
}

/// Squared distance from `p` to the closed segment `a b`.
pub fn point_segment_dist2(p: &Point, a: &Point, b: &Point) -> Rational {
    let ab = b.sub(a);
    let len2 = ab.norm2();
    if len2.is_zero() {
        return p.dist2(a);
    }
    let ap = p.sub(a);
    let dot = ap.dot(&ab);
    if !dot.is_positive() {
        p.dist2(a)
    } else if dot >= len2 {
        p.dist2(b)
    } else {
        // height of the triangle a b p over the base a b
        let c = ab.cross(&ap);
        &c * &c / len2
    }
}

/// Squared distance between two closed segments (zero when they meet).
pub fn segment_segment_dist2(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> Rational {
    if intersect_segments(p1, p2, q1, q2) != SegmentIntersection::None {
        return Rational::zero();
    }
    [
        point_segment_dist2(p1, q1, q2),
        point_segment_dist2(p2, q1, q2),
        point_segment_dist2(q1, p1, p2),
        point_segment_dist2(q2, p1, p2),
    ]
    .into_iter()
    .min()
    .unwrap()
}

/// Compares two non-zero direction vectors by clockwise angle measured from
/// straight up: up itself comes first, then right, down, left.
pub fn clockwise_from_up(a: &Point, b: &Point) -> Ordering {
    // half 0: angle in [0, 180) clockwise from up, i.e. x > 0 or straight up
    let half = |d: &Point| {
        if d.x.is_positive() || (d.x.is_zero() && d.y.is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        // inside one half, b comes later iff it is clockwise of a
        a.cross(b).cmp(&Rational::zero())
    })
}
