//! Seeded random straight-line upward drawings.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use upward_core::geometry::{
    in_segment_interior, intersect_segments, validate_drawing, Drawing, Point, SegmentIntersection,
};
use upward_core::graph::{DirectedAcyclicGraph, EdgeRecord, VertexId};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub vertices: usize,
    pub edges: usize,
    pub seed: u64,
    /// Samples spent on each edge before giving up.
    pub max_attempts: usize,
    /// Integer coordinates are drawn from `0..=coordinate_range`; it must be
    /// at least `vertices - 1` so that every y can be distinct.
    pub coordinate_range: i64,
}

impl GeneratorConfig {
    pub fn new(vertices: usize, edges: usize, seed: u64) -> Self {
        GeneratorConfig {
            vertices,
            edges,
            seed,
            max_attempts: 200,
            coordinate_range: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub drawing: Drawing,
    /// At most the requested edge count.
    pub achieved_edges: usize,
}

fn width(n: usize) -> usize {
    n.saturating_sub(1).to_string().len()
}

fn blocked(
    new: (&Point, &Point),
    ends: (&VertexId, &VertexId),
    placed: &[(Point, Point, VertexId, VertexId)],
    points: &BTreeMap<VertexId, Point>,
) -> bool {
    for (v, p) in points {
        if v != ends.0 && v != ends.1 && in_segment_interior(p, new.0, new.1) {
            return true;
        }
    }
    for (a, b, t, h) in placed {
        match intersect_segments(new.0, new.1, a, b) {
            SegmentIntersection::None => {}
            SegmentIntersection::Overlap(..) => return true,
            SegmentIntersection::Point(p) => {
                let shared = [ends.0, ends.1]
                    .into_iter()
                    .any(|v| (v == t || v == h) && points[v] == p);
                if !shared {
                    return true;
                }
            }
        }
    }
    false
}

/// Places vertices `v0..` at distinct heights, then samples ordered pairs and
/// keeps each straight edge that meets nothing already drawn.
pub fn generate(config: &GeneratorConfig) -> Result<Generated> {
    let n = config.vertices;
    if n == 0 {
        return Err(HarnessError::Format(
            "generator needs at least one vertex".into(),
        ));
    }
    if config.coordinate_range < n as i64 - 1 {
        return Err(HarnessError::Format(format!(
            "coordinate range {} cannot hold {n} distinct heights",
            config.coordinate_range
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut heights: Vec<i64> = (0..=config.coordinate_range).collect();
    heights.shuffle(&mut rng);
    let w = width(n);
    let ids: Vec<VertexId> = (0..n)
        .map(|i| VertexId::from(format!("v{i:0w$}").as_str()))
        .collect();
    let points: BTreeMap<VertexId, Point> = ids
        .iter()
        .zip(&heights)
        .map(|(v, &y)| {
            (
                v.clone(),
                Point::from_ints(rng.random_range(0..=config.coordinate_range), y),
            )
        })
        .collect();

    let ew = width(config.edges);
    let mut edges = Vec::new();
    let mut placed: Vec<(Point, Point, VertexId, VertexId)> = Vec::new();
    'edges: while edges.len() < config.edges && n > 1 {
        for _ in 0..config.max_attempts {
            let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
            let (u, v) = (&ids[i], &ids[j]);
            if points[u].y <= points[v].y {
                continue;
            }
            if blocked((&points[u], &points[v]), (u, v), &placed, &points) {
                continue;
            }
            placed.push((points[u].clone(), points[v].clone(), u.clone(), v.clone()));
            edges.push(EdgeRecord::new(
                format!("e{:0ew$}", edges.len()),
                u.clone(),
                v.clone(),
            ));
            continue 'edges;
        }
        break;
    }
    let achieved_edges = edges.len();
    let graph = DirectedAcyclicGraph::new(ids, edges)?;
    let drawing = Drawing::new(graph, points, BTreeMap::new())?;
    debug_assert!(validate_drawing(&drawing).ok);
    Ok(Generated {
        drawing,
        achieved_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use upward_core::embedding::{check_bimodal, extract_rotation_system};

    #[test]
    fn single_vertex() {
        let g = generate(&GeneratorConfig::new(1, 0, 0)).unwrap();
        assert_eq!(g.drawing.graph().vertex_count(), 1);
        assert_eq!(g.achieved_edges, 0);
        assert!(validate_drawing(&g.drawing).ok);
    }

    #[test]
    fn seed_42() {
        let g = generate(&GeneratorConfig::new(8, 12, 42)).unwrap();
        assert!(validate_drawing(&g.drawing).ok);
        assert_eq!(g.drawing.graph().edge_count(), g.achieved_edges);
        let rs = extract_rotation_system(&g.drawing).unwrap();
        for r in rs.0.values() {
            assert!(check_bimodal(r, g.drawing.graph()).unwrap());
        }
        assert_eq!(generate(&GeneratorConfig::new(8, 12, 42)).unwrap(), g);
    }

    #[test]
    fn distinct_heights_and_ids_sort_numerically() {
        let g = generate(&GeneratorConfig::new(12, 20, 9)).unwrap();
        let mut ys: Vec<_> = g
            .drawing
            .positions()
            .values()
            .map(|p| p.y.clone())
            .collect();
        ys.sort();
        ys.dedup();
        assert_eq!(ys.len(), 12);
        assert_eq!(g.drawing.graph().vertices().next().unwrap().as_str(), "v00");
    }

    #[test]
    fn range_too_small() {
        let mut c = GeneratorConfig::new(5, 3, 1);
        c.coordinate_range = 3;
        assert!(generate(&c).is_err());
        assert!(generate(&GeneratorConfig::new(0, 0, 1)).is_err());
    }
}
