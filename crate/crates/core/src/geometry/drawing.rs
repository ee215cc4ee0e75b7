use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{DirectedAcyclicGraph, EdgeId, EdgeRecord, VertexId};

use super::predicates::Point;

/// A graph together with vertex positions and per-edge bend lists.
///
/// The polyline of edge `e` runs from the tail's position through the bends
/// to the head's position. Geometric validity is not enforced here; see
/// [`validate_drawing`](super::validate_drawing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    graph: DirectedAcyclicGraph,
    positions: BTreeMap<VertexId, Point>,
    bends: BTreeMap<EdgeId, Vec<Point>>,
}

impl Drawing {
    /// Edges missing from `bends` are drawn straight.
    pub fn new(
        graph: DirectedAcyclicGraph,
        positions: BTreeMap<VertexId, Point>,
        mut bends: BTreeMap<EdgeId, Vec<Point>>,
    ) -> Result<Self> {
        for v in graph.vertices() {
            if !positions.contains_key(v) {
                return Err(Error::structural(v.as_str(), "vertex has no position"));
            }
        }
        if let Some(v) = positions.keys().find(|v| !graph.contains_vertex(v)) {
            return Err(Error::structural(
                v.as_str(),
                "position for an unknown vertex",
            ));
        }
        if let Some(e) = bends.keys().find(|e| !graph.contains_edge(e)) {
            return Err(Error::structural(e.as_str(), "bends for an unknown edge"));
        }
        for e in graph.edges() {
            bends.entry(e.id.clone()).or_default();
        }
        Ok(Drawing {
            graph,
            positions,
            bends,
        })
    }

    /// Builds a straight-line drawing from integer coordinates.
    pub fn straight(vertices: &[(&str, i64, i64)], edges: &[(&str, &str, &str)]) -> Result<Self> {
        let graph = DirectedAcyclicGraph::from_triples(
            &vertices.iter().map(|v| v.0).collect::<Vec<_>>(),
            edges,
        )?;
        let positions = vertices
            .iter()
            .map(|&(v, x, y)| (VertexId::from(v), Point::from_ints(x, y)))
            .collect();
        Drawing::new(graph, positions, BTreeMap::new())
    }

    pub fn graph(&self) -> &DirectedAcyclicGraph {
        &self.graph
    }

    pub fn position(&self, v: &VertexId) -> &Point {
        &self.positions[v]
    }

    pub fn positions(&self) -> &BTreeMap<VertexId, Point> {
        &self.positions
    }

    pub fn bends(&self, e: &EdgeId) -> &[Point] {
        self.bends.get(e).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn all_bends(&self) -> &BTreeMap<EdgeId, Vec<Point>> {
        &self.bends
    }

    /// Full polyline of an edge, tail first.
    pub fn polyline(&self, e: &EdgeRecord) -> Vec<Point> {
        let mut pts = Vec::with_capacity(self.bends(&e.id).len() + 2);
        pts.push(self.positions[&e.tail].clone());
        pts.extend(self.bends(&e.id).iter().cloned());
        pts.push(self.positions[&e.head].clone());
        pts
    }

    /// Polyline of an edge read from vertex `v` outwards.
    pub fn polyline_from(&self, e: &EdgeRecord, v: &VertexId) -> Vec<Point> {
        let mut pts = self.polyline(e);
        if &e.head == v {
            pts.reverse();
        }
        pts
    }

    /// Applies `f` to every vertex position and bend.
    pub fn map_points(&self, mut f: impl FnMut(&Point) -> Point) -> Drawing {
        Drawing {
            graph: self.graph.clone(),
            positions: self
                .positions
                .iter()
                .map(|(v, p)| (v.clone(), f(p)))
                .collect(),
            bends: self
                .bends
                .iter()
                .map(|(e, b)| (e.clone(), b.iter().map(&mut f).collect()))
                .collect(),
        }
    }

    pub(crate) fn with_position(&self, v: &VertexId, p: Point) -> Drawing {
        let mut d = self.clone();
        d.positions.insert(v.clone(), p);
        d
    }

    pub(crate) fn with_bends(&self, e: &EdgeId, bends: Vec<Point>) -> Drawing {
        let mut d = self.clone();
        d.bends.insert(e.clone(), bends);
        d
    }

    /// Adds vertices and edges (with their geometry) to a copy of this drawing.
    pub(crate) fn extended(
        &self,
        graph: DirectedAcyclicGraph,
        new_positions: impl IntoIterator<Item = (VertexId, Point)>,
        new_bends: impl IntoIterator<Item = (EdgeId, Vec<Point>)>,
    ) -> Result<Drawing> {
        let mut positions = self.positions.clone();
        positions.extend(new_positions);
        positions.retain(|v, _| graph.contains_vertex(v));
        let mut bends = self.bends.clone();
        bends.extend(new_bends);
        bends.retain(|e, _| graph.contains_edge(e));
        Drawing::new(graph, positions, bends)
    }

    /// The sub-drawing induced by `graph`, which must be a subgraph.
    pub fn restrict_to(&self, graph: &DirectedAcyclicGraph) -> Result<Drawing> {
        let positions = graph
            .vertices()
            .map(|v| {
                self.positions
                    .get(v)
                    .map(|p| (v.clone(), p.clone()))
                    .ok_or_else(|| Error::structural(v.as_str(), "vertex not in drawing"))
            })
            .collect::<Result<_>>()?;
        let bends = graph
            .edges()
            .map(|e| (e.id.clone(), self.bends(&e.id).to_vec()))
            .collect();
        Drawing::new(graph.clone(), positions, bends)
    }

    /// Total number of polyline points (vertices plus bends).
    pub fn point_count(&self) -> usize {
        self.positions.len() + self.bends.values().map(Vec::len).sum::<usize>()
    }
}
