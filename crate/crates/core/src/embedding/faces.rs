//! Face tracing over a rotation system.
//!
//! Arriving at a vertex along edge `e`, a walk continues along the clockwise
//! successor of `e`; every face therefore lies to the left of its half-edges.
//!
//! Outer faces are marked per connected component. For the Euler identity the
//! outer faces of all components are merged into the single unbounded region:
//! `V - E + (bounded faces + 1) = 1 + C`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{orientation, Drawing, Point, Rational};
use crate::graph::{DirectedAcyclicGraph, EdgeId, VertexId};

use super::rotation::{extract_rotation, RotationSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Traversal {
    /// Tail to head.
    Forward,
    /// Head to tail.
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub direction: Traversal,
}

impl HalfEdge {
    pub fn new(edge: impl Into<EdgeId>, direction: Traversal) -> Self {
        HalfEdge {
            edge: edge.into(),
            direction,
        }
    }

    /// The vertex this half-edge leaves from.
    pub fn origin<'g>(&self, graph: &'g DirectedAcyclicGraph) -> &'g VertexId {
        let e = graph.edge(&self.edge).unwrap();
        match self.direction {
            Traversal::Forward => &e.tail,
            Traversal::Backward => &e.head,
        }
    }

    pub fn target<'g>(&self, graph: &'g DirectedAcyclicGraph) -> &'g VertexId {
        let e = graph.edge(&self.edge).unwrap();
        match self.direction {
            Traversal::Forward => &e.head,
            Traversal::Backward => &e.tail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Boundary walk, listed from its smallest half-edge.
    pub walk: Vec<HalfEdge>,
    pub is_outer: bool,
}

impl Face {
    /// The smallest half-edge on the walk; identifies the face.
    pub fn key(&self) -> &HalfEdge {
        &self.walk[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentFaces {
    /// Smallest vertex id of the component.
    pub key: VertexId,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub faces: Vec<Face>,
}

impl ComponentFaces {
    pub fn outer(&self) -> Option<&Face> {
        self.faces.iter().find(|f| f.is_outer)
    }

    pub fn bounded(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| !f.is_outer)
    }
}

/// Traces every face of every component. No face is marked outer yet; see
/// [`mark_outer_faces`].
pub fn trace_faces(
    rotations: &RotationSystem,
    graph: &DirectedAcyclicGraph,
) -> Result<Vec<ComponentFaces>> {
    if let Some(v) = graph.isolated_vertices().next() {
        return Err(Error::Domain(format!(
            "isolated vertex `{v}` has no faces; virtualize it first"
        )));
    }
    let mut out = Vec::new();
    for comp in graph.components() {
        let vset: BTreeSet<&VertexId> = comp.iter().collect();
        let edges: Vec<EdgeId> = graph
            .edges()
            .filter(|e| vset.contains(&e.tail))
            .map(|e| e.id.clone())
            .collect();
        let mut unvisited: BTreeSet<HalfEdge> = edges
            .iter()
            .flat_map(|e| {
                [
                    HalfEdge::new(e.clone(), Traversal::Forward),
                    HalfEdge::new(e.clone(), Traversal::Backward),
                ]
            })
            .collect();
        let mut faces = Vec::new();
        while let Some(start) = unvisited.pop_first() {
            let mut walk = vec![start.clone()];
            let mut cur = start.clone();
            loop {
                let v = cur.target(graph);
                let rot = rotations.get(v).ok_or_else(|| {
                    Error::structural(v.as_str(), "vertex missing from rotation system")
                })?;
                let f = rot.successor(&cur.edge).ok_or_else(|| {
                    Error::structural(
                        v.as_str(),
                        format!("edge `{}` missing from rotation", cur.edge),
                    )
                })?;
                let rec = graph.edge(f).unwrap();
                let next = HalfEdge::new(
                    f.clone(),
                    if &rec.tail == v {
                        Traversal::Forward
                    } else {
                        Traversal::Backward
                    },
                );
                if next == start {
                    break;
                }
                if !unvisited.remove(&next) {
                    return Err(Error::structural(
                        next.edge.as_str(),
                        "rotation system does not define a consistent face walk",
                    ));
                }
                walk.push(next.clone());
                cur = next;
            }
            faces.push(Face {
                walk,
                is_outer: false,
            });
        }
        out.push(ComponentFaces {
            key: comp[0].clone(),
            vertices: comp,
            edges,
            faces,
        });
    }
    Ok(out)
}

/// Marks each component's outer face: the face seen straight above the
/// component's topmost vertex, where nothing of the component can lie.
pub fn mark_outer_faces(components: &mut [ComponentFaces], drawing: &Drawing) -> Result<()> {
    for comp in components {
        let top = topmost(&comp.vertices, drawing);
        let raw = extract_rotation(drawing, top)?;
        // the raw rotation starts just clockwise of "up", so its last edge is
        // the one just counterclockwise of it; arriving along that edge the
        // walk turns through the upward direction
        let last = raw.edges.last().unwrap().clone();
        let arriving = HalfEdge::new(last, Traversal::Backward);
        for f in &mut comp.faces {
            f.is_outer = f.walk.contains(&arriving);
        }
    }
    Ok(())
}

/// Topmost vertex, smallest id among ties.
pub(crate) fn topmost<'a>(vertices: &'a [VertexId], drawing: &Drawing) -> &'a VertexId {
    vertices
        .iter()
        .max_by(|a, b| {
            drawing
                .position(a)
                .y
                .cmp(&drawing.position(b).y)
                .then_with(|| b.cmp(a))
        })
        .unwrap()
}

/// Traces faces and marks outer faces using the drawing's own rotations.
pub fn faces_of(drawing: &Drawing, rotations: &RotationSystem) -> Result<Vec<ComponentFaces>> {
    let mut comps = trace_faces(rotations, drawing.graph())?;
    mark_outer_faces(&mut comps, drawing)?;
    Ok(comps)
}

/// `V - E + F` with all outer faces merged into one, and `1 + C`.
pub fn euler_counts(graph: &DirectedAcyclicGraph, components: &[ComponentFaces]) -> (i64, i64) {
    let bounded: usize = components.iter().map(|c| c.bounded().count()).sum();
    let lhs = graph.vertex_count() as i64 - graph.edge_count() as i64 + bounded as i64 + 1;
    (lhs, 1 + graph.components().len() as i64)
}

/// Closed polygon traced by a face walk (each vertex or bend once per visit).
pub fn face_polygon(face: &Face, drawing: &Drawing) -> Vec<Point> {
    let graph = drawing.graph();
    let mut pts = Vec::new();
    for h in &face.walk {
        let e = graph.edge(&h.edge).unwrap();
        let mut line = drawing.polyline(e);
        if h.direction == Traversal::Backward {
            line.reverse();
        }
        line.pop();
        pts.extend(line);
    }
    pts
}

/// Winding number of a closed polygon around `p`, which must not lie on it.
pub fn winding_number(polygon: &[Point], p: &Point) -> i64 {
    let n = polygon.len();
    let mut wn = 0;
    for i in 0..n {
        let (a, b) = (&polygon[i], &polygon[(i + 1) % n]);
        if a.y <= p.y {
            if b.y > p.y && orientation(a, b, p) == Ordering::Greater {
                wn += 1;
            }
        } else if b.y <= p.y && orientation(a, b, p) == Ordering::Less {
            wn -= 1;
        }
    }
    wn
}

/// Signed doubled area, used only in tests as an orientation cross-check.
#[allow(dead_code)]
pub(crate) fn doubled_area(polygon: &[Point]) -> Rational {
    let n = polygon.len();
    (0..n).fold(Rational::zero(), |acc, i| {
        acc + polygon[i].cross(&polygon[(i + 1) % n])
    })
}
