//! Piecewise-linear deformation certificates.
//!
//! A chain is a list of drawings of one graph. Consecutive frames either
//! move points by strictly less than a quarter of the earlier frame's
//! clearance, or insert/remove a single bend lying exactly on its segment.
//!
//! For a coordinate step the straight-line interpolation between two frames
//! is a deformation: y-differences along each polyline are convex
//! combinations of negative numbers, so they stay negative; and every point
//! moves less than `c/4` while non-adjacent features start at least `c`
//! apart, so they stay more than `c/2` apart throughout.

use std::fmt;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::rational::{int, pow2_floor, ratio, sqrt_lower_bound};
use crate::geometry::{
    in_segment_interior, min_clearance_unchecked, orientation, require_valid, validate_drawing,
    Drawing, Point, Rational,
};
use crate::graph::{EdgeId, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MoveKind {
    /// One vertex or bend moves.
    Jitter,
    Translate,
    /// Uniform positive scaling about a vertex.
    Scale,
    InsertBend,
    RemoveBend,
    /// No admissible move was found; the frame repeats.
    Identity,
}

impl MoveKind {
    pub fn is_refinement(self) -> bool {
        matches!(self, MoveKind::InsertBend | MoveKind::RemoveBend)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        f.write_str(s.as_str().unwrap())
    }
}

/// Metadata of one chain link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub kind: MoveKind,
    /// Largest squared point displacement (zero for refinements).
    pub max_displacement2: Rational,
    /// Squared clearance of the frame the step starts from; `None` when unbounded.
    pub clearance2: Option<Rational>,
    /// Set when every sampled move was rejected.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationChain {
    pub frames: Vec<Drawing>,
    pub steps: Vec<ChainStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbOutcome {
    pub drawing: Drawing,
    pub step: ChainStep,
}

const MAX_ATTEMPTS: usize = 24;

/// Polyline points addressed uniformly: a vertex or the `i`-th bend of an edge.
#[derive(Clone, Debug)]
enum PointRef {
    Vertex(VertexId),
    Bend(EdgeId, usize),
}

fn point_refs(d: &Drawing) -> Vec<PointRef> {
    let mut out: Vec<PointRef> = d
        .graph()
        .vertices()
        .cloned()
        .map(PointRef::Vertex)
        .collect();
    for (e, bends) in d.all_bends() {
        out.extend((0..bends.len()).map(|i| PointRef::Bend(e.clone(), i)));
    }
    out
}

fn move_point(d: &Drawing, at: &PointRef, delta: &Point) -> Drawing {
    match at {
        PointRef::Vertex(v) => d.with_position(v, d.position(v).add(delta)),
        PointRef::Bend(e, i) => {
            let mut bends = d.bends(e).to_vec();
            bends[*i] = bends[*i].add(delta);
            d.with_bends(e, bends)
        }
    }
}

/// Squared largest displacement between two drawings with identical structure.
pub fn max_displacement2(a: &Drawing, b: &Drawing) -> Option<Rational> {
    if a.graph() != b.graph() {
        return None;
    }
    let mut best = Rational::from_integer(0.into());
    for (v, p) in a.positions() {
        best = best.max(p.dist2(b.position(v)));
    }
    for (e, bends) in a.all_bends() {
        let other = b.bends(e);
        if other.len() != bends.len() {
            return None;
        }
        for (p, q) in bends.iter().zip(other) {
            best = best.max(p.dist2(q));
        }
    }
    Some(best)
}

/// Point-wise interpolation `a + t (b - a)` of two drawings of equal structure.
pub fn interpolate(a: &Drawing, b: &Drawing, t: &Rational) -> Drawing {
    let mut out = a.clone();
    for (v, p) in a.positions() {
        out = out.with_position(v, p.lerp(b.position(v), t));
    }
    for (e, bends) in a.all_bends() {
        let moved = bends
            .iter()
            .zip(b.bends(e))
            .map(|(p, q)| p.lerp(q, t))
            .collect();
        out = out.with_bends(e, moved);
    }
    out
}

fn within_bound(disp2: &Rational, clearance2: &Option<Rational>) -> bool {
    clearance2.as_ref().is_none_or(|c2| disp2 * int(16) < *c2)
}

fn rng_for(seed: u64, step_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(step_index);
    rng
}

/// `k / 1024 * scale` for a uniformly drawn integer `k` in `[-1024, 1024]`.
fn signed_fraction(rng: &mut ChaCha8Rng, scale: &Rational) -> Rational {
    ratio(rng.random_range(-1024..=1024), 1024) * scale
}

fn try_move(d: &Drawing, rng: &mut ChaCha8Rng, reach: &Rational) -> Option<(MoveKind, Drawing)> {
    let roll = rng.random_range(0..100);
    // powers of two keep dyadic coordinates dyadic, so denominators grow
    // by a few bits per move instead of compounding
    let half = pow2_floor(reach) / int(2);
    match roll {
        0..=49 => {
            let refs = point_refs(d);
            let at = &refs[rng.random_range(0..refs.len())];
            let delta = Point::new(signed_fraction(rng, &half), signed_fraction(rng, &half));
            Some((MoveKind::Jitter, move_point(d, at, &delta)))
        }
        50..=59 => {
            let delta = Point::new(signed_fraction(rng, &half), signed_fraction(rng, &half));
            Some((MoveKind::Translate, d.map_points(|p| p.add(&delta))))
        }
        60..=69 => {
            let centre = d.positions().values().next()?.clone();
            let far2 = d
                .positions()
                .values()
                .chain(d.all_bends().values().flatten())
                .map(|p| p.dist2(&centre))
                .max()?;
            if far2 == int(0) {
                return None;
            }
            // 2^j >= far once 4^j >= far2
            let mut far = pow2_floor(&far2.clone().max(Rational::one()));
            while &far * &far < far2 {
                far *= int(2);
            }
            let factor = Rational::one() + signed_fraction(rng, &(&half / far));
            if factor <= int(0) {
                return None;
            }
            // snapped back to the jitter lattice; the snap moves each point by
            // far less than the reach and the displacement is re-checked exactly
            let grid = &half / int(1024);
            let snap = |r: Rational| (r / &grid).round() * &grid;
            Some((
                MoveKind::Scale,
                d.map_points(|p| {
                    let q = centre.add(&p.sub(&centre).scale(&factor));
                    Point::new(snap(q.x), snap(q.y))
                }),
            ))
        }
        70..=84 => {
            let edges: Vec<_> = d.graph().edges().collect();
            let e = edges.get(rng.random_range(0..edges.len().max(1)))?;
            let line = d.polyline(e);
            let seg = rng.random_range(0..line.len() - 1);
            let mid = line[seg].lerp(&line[seg + 1], &ratio(1, 2));
            let mut bends = d.bends(&e.id).to_vec();
            bends.insert(seg, mid);
            Some((MoveKind::InsertBend, d.with_bends(&e.id, bends)))
        }
        _ => {
            let mut removable = Vec::new();
            for e in d.graph().edges() {
                let line = d.polyline(e);
                for i in 1..line.len() - 1 {
                    if orientation(&line[i - 1], &line[i], &line[i + 1])
                        == std::cmp::Ordering::Equal
                    {
                        removable.push((e.id.clone(), i - 1));
                    }
                }
            }
            if removable.is_empty() {
                return None;
            }
            let (e, i) = &removable[rng.random_range(0..removable.len())];
            let mut bends = d.bends(e).to_vec();
            bends.remove(*i);
            Some((MoveKind::RemoveBend, d.with_bends(e, bends)))
        }
    }
}

/// One seeded random deformation move. Rejected samples are redrawn a
/// bounded number of times; if none is admissible the input is returned
/// with `fallback` set. An invalid input is always returned unchanged.
pub fn perturb_step(drawing: &Drawing, seed: u64, step_index: u64) -> PerturbOutcome {
    let identity = |clearance2| PerturbOutcome {
        drawing: drawing.clone(),
        step: ChainStep {
            kind: MoveKind::Identity,
            max_displacement2: int(0),
            clearance2,
            fallback: true,
        },
    };
    if !validate_drawing(drawing).ok {
        return identity(None);
    }
    let clearance2 = min_clearance_unchecked(drawing);
    // reach < c/4; moves use offsets of at most reach/2 per axis
    let reach = match &clearance2 {
        Some(c2) => sqrt_lower_bound(&(c2 / int(16)), true),
        None => int(1),
    };
    let mut rng = rng_for(seed, step_index);
    for _ in 0..MAX_ATTEMPTS {
        let Some((kind, next)) = try_move(drawing, &mut rng, &reach) else {
            continue;
        };
        if !validate_drawing(&next).ok {
            continue;
        }
        let disp2 = if kind.is_refinement() {
            int(0)
        } else {
            match max_displacement2(drawing, &next) {
                Some(d2) if within_bound(&d2, &clearance2) => d2,
                _ => continue,
            }
        };
        return PerturbOutcome {
            drawing: next,
            step: ChainStep {
                kind,
                max_displacement2: disp2,
                clearance2,
                fallback: false,
            },
        };
    }
    identity(clearance2)
}

/// A chain of `steps + 1` frames starting at `drawing`.
pub fn make_chain(drawing: &Drawing, steps: usize, seed: u64) -> Result<DeformationChain> {
    require_valid(drawing)?;
    let mut frames = vec![drawing.clone()];
    let mut meta = Vec::with_capacity(steps);
    for i in 0..steps {
        let out = perturb_step(frames.last().unwrap(), seed, i as u64);
        frames.push(out.drawing);
        meta.push(out.step);
    }
    Ok(DeformationChain {
        frames,
        steps: meta,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFailure {
    /// Index of the first frame that breaks the chain.
    pub index: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVerification {
    pub ok: bool,
    pub failure: Option<ChainFailure>,
}

/// Whether `b` is `a` with one bend inserted exactly inside a segment.
fn is_bend_insertion(a: &Drawing, b: &Drawing) -> bool {
    if a.positions() != b.positions() {
        return false;
    }
    let mut changed = a
        .graph()
        .edges()
        .filter(|e| a.bends(&e.id) != b.bends(&e.id));
    let (Some(e), None) = (changed.next(), changed.next()) else {
        return false;
    };
    let (short, long) = (a.polyline(e), b.polyline(e));
    if long.len() != short.len() + 1 {
        return false;
    }
    let Some(i) = (0..short.len()).find(|&i| short[i] != long[i]) else {
        return false;
    };
    long[..i] == short[..i]
        && long[i + 1..] == short[i..]
        && in_segment_interior(&long[i], &short[i - 1], &short[i])
}

/// Checks every chain invariant and reports the first failing frame.
pub fn verify_chain(chain: &DeformationChain) -> ChainVerification {
    let fail = |index: usize, reason: String| ChainVerification {
        ok: false,
        failure: Some(ChainFailure { index, reason }),
    };
    let Some(first) = chain.frames.first() else {
        return fail(0, "empty chain".into());
    };
    let first_report = validate_drawing(first);
    if !first_report.ok {
        return fail(
            0,
            format!("invalid drawing: {}", first_report.violations[0].code),
        );
    }
    for (i, w) in chain.frames.windows(2).enumerate() {
        let (prev, next) = (&w[0], &w[1]);
        let index = i + 1;
        let report = validate_drawing(next);
        if !report.ok {
            return fail(
                index,
                format!("invalid drawing: {}", report.violations[0].code),
            );
        }
        if prev.graph() != next.graph() {
            return fail(index, "graph changed".into());
        }
        if let Some(d2) = max_displacement2(prev, next) {
            let c2 = min_clearance_unchecked(prev);
            if !within_bound(&d2, &c2) {
                return fail(index, "displacement bound violated".into());
            }
        } else if !(is_bend_insertion(prev, next) || is_bend_insertion(next, prev)) {
            return fail(
                index,
                "bend structure changed by more than one no-op bend".into(),
            );
        }
    }
    ChainVerification {
        ok: true,
        failure: None,
    }
}
