//! Rotations, bimodality and polarizations.
//!
//! Rotations are read clockwise in y-up coordinates. With that reading a
//! polarization `in = [h1..hk]`, `out = [f1..fl]` (both left to right)
//! corresponds to the cycle `(h1, .., hk, fl, .., f1)`: after any outgoing
//! edge the incoming edges follow in left-to-right order, and after any
//! incoming edge the outgoing edges follow in right-to-left order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{clockwise_from_up, Drawing, Point, Rational};
use crate::graph::{DirectedAcyclicGraph, EdgeId, EdgeRecord, VertexId};

/// Clockwise cyclic order of the edges at one vertex.
///
/// Equality is cyclic: two rotations are equal when one is a rotation of the
/// other's list.
#[derive(Clone, Debug, Eq, Serialize, Deserialize)]
pub struct Rotation {
    pub vertex: VertexId,
    pub edges: Vec<EdgeId>,
}

impl PartialEq for Rotation {
    fn eq(&self, other: &Self) -> bool {
        self.vertex == other.vertex && self.canonical().edges == other.canonical().edges
    }
}

impl Rotation {
    pub fn new(
        vertex: impl Into<VertexId>,
        edges: impl IntoIterator<Item = impl Into<EdgeId>>,
    ) -> Self {
        Rotation {
            vertex: vertex.into(),
            edges: edges.into_iter().map(Into::into).collect(),
        }
    }

    /// The same cycle listed from its smallest edge id.
    pub fn canonical(&self) -> Rotation {
        let mut edges = self.edges.clone();
        if let Some(i) = (0..edges.len()).min_by_key(|&i| &edges[i]) {
            edges.rotate_left(i);
        }
        Rotation {
            vertex: self.vertex.clone(),
            edges,
        }
    }

    /// The cycle read counterclockwise.
    pub fn reversed(&self) -> Rotation {
        let mut edges = self.edges.clone();
        edges.reverse();
        Rotation {
            vertex: self.vertex.clone(),
            edges,
        }
    }

    /// Clockwise successor of `e`.
    pub fn successor(&self, e: &EdgeId) -> Option<&EdgeId> {
        let i = self.edges.iter().position(|x| x == e)?;
        Some(&self.edges[(i + 1) % self.edges.len()])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationSystem(pub BTreeMap<VertexId, Rotation>);

impl RotationSystem {
    pub fn get(&self, v: &VertexId) -> Option<&Rotation> {
        self.0.get(v)
    }
}

/// Left-to-right orders of the incoming and outgoing edges at a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polarization {
    pub vertex: VertexId,
    #[serde(rename = "in")]
    pub in_order: Vec<EdgeId>,
    #[serde(rename = "out")]
    pub out_order: Vec<EdgeId>,
}

impl Polarization {
    pub fn new(
        vertex: impl Into<VertexId>,
        in_order: impl IntoIterator<Item = impl Into<EdgeId>>,
        out_order: impl IntoIterator<Item = impl Into<EdgeId>>,
    ) -> Self {
        Polarization {
            vertex: vertex.into(),
            in_order: in_order.into_iter().map(Into::into).collect(),
            out_order: out_order.into_iter().map(Into::into).collect(),
        }
    }

    pub fn empty(vertex: VertexId) -> Self {
        Polarization {
            vertex,
            in_order: Vec::new(),
            out_order: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolarizationStructure(pub BTreeMap<VertexId, Polarization>);

impl PolarizationStructure {
    pub fn get(&self, v: &VertexId) -> Option<&Polarization> {
        self.0.get(v)
    }
}

/// Direction vectors of successive segments of `e`, read away from `v`.
fn directions_from(drawing: &Drawing, e: &EdgeRecord, v: &VertexId) -> Vec<Point> {
    drawing
        .polyline_from(e, v)
        .windows(2)
        .map(|w| w[1].sub(&w[0]))
        .collect()
}

/// Orders edges by their first direction with `first`; equal first
/// directions fall back to the following directions, then to edge ids.
fn order_edges(
    drawing: &Drawing,
    v: &VertexId,
    edges: impl IntoIterator<Item = EdgeId>,
    first: impl Fn(&Point, &Point) -> Ordering,
) -> Vec<EdgeId> {
    let graph = drawing.graph();
    let mut keyed: Vec<(Vec<Point>, EdgeId)> = edges
        .into_iter()
        .map(|e| (directions_from(drawing, graph.edge(&e).unwrap(), v), e))
        .collect();
    keyed.sort_by(|(da, ea), (db, eb)| {
        let tie = |x: &Point, y: &Point| x.cross(y).is_zero() && x.dot(y) > Rational::zero();
        let head = first(&da[0], &db[0]);
        if !tie(&da[0], &db[0]) {
            return head;
        }
        for (x, y) in da.iter().zip(db).skip(1) {
            if !tie(x, y) {
                return clockwise_from_up(x, y);
            }
        }
        ea.cmp(eb)
    });
    keyed.into_iter().map(|(_, e)| e).collect()
}

/// Clockwise rotation at `v`, listed starting from the first edge at or
/// clockwise after the upward vertical.
pub fn extract_rotation(drawing: &Drawing, v: &VertexId) -> Result<Rotation> {
    let graph = drawing.graph();
    if !graph.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.0.clone()));
    }
    let edges = order_edges(drawing, v, graph.incident(v).cloned(), clockwise_from_up);
    Ok(Rotation {
        vertex: v.clone(),
        edges,
    })
}

/// Rotation at every vertex. Upward drawings always yield bimodal
/// rotations; a non-bimodal result is reported as an internal error.
pub fn extract_rotation_system(drawing: &Drawing) -> Result<RotationSystem> {
    let graph = drawing.graph();
    let mut out = BTreeMap::new();
    for v in graph.vertices() {
        let r = extract_rotation(drawing, v)?;
        if !check_bimodal(&r, graph)? {
            return Err(Error::Internal(format!(
                "extracted rotation at `{v}` is not bimodal: {:?}",
                r.edges
            )));
        }
        out.insert(v.clone(), r);
    }
    Ok(RotationSystem(out))
}

fn check_incidence(rotation: &Rotation, graph: &DirectedAcyclicGraph) -> Result<()> {
    let v = &rotation.vertex;
    if !graph.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.0.clone()));
    }
    let listed: BTreeSet<&EdgeId> = rotation.edges.iter().collect();
    let actual: BTreeSet<&EdgeId> = graph.incident(v).collect();
    if listed.len() != rotation.edges.len() || listed != actual {
        return Err(Error::structural(
            v.as_str(),
            "rotation does not list exactly the incident edges",
        ));
    }
    Ok(())
}

/// True iff the incoming edges form one cyclic interval (and so the
/// outgoing edges form the complementary one).
pub fn check_bimodal(rotation: &Rotation, graph: &DirectedAcyclicGraph) -> Result<bool> {
    check_incidence(rotation, graph)?;
    let v = &rotation.vertex;
    let is_in: Vec<bool> = rotation
        .edges
        .iter()
        .map(|e| &graph.edge(e).unwrap().head == v)
        .collect();
    let n = is_in.len();
    let switches = (0..n).filter(|&i| is_in[i] != is_in[(i + 1) % n]).count();
    Ok(switches <= 2)
}

/// Reads the polarization off a bimodal rotation at a processive vertex or a
/// leaf. Isolated vertices give the empty polarization.
pub fn rotation_to_polarization(
    rotation: &Rotation,
    graph: &DirectedAcyclicGraph,
) -> Result<Polarization> {
    if !check_bimodal(rotation, graph)? {
        return Err(Error::Domain(format!(
            "rotation at `{}` is not bimodal",
            rotation.vertex
        )));
    }
    let v = &rotation.vertex;
    let (ni, no) = (graph.incoming(v).len(), graph.outgoing(v).len());
    if ni + no == 0 {
        return Ok(Polarization::empty(v.clone()));
    }
    if ni + no == 1 {
        let e = rotation.edges[0].clone();
        return Ok(if ni == 1 {
            Polarization::new(v.clone(), [e], Vec::<EdgeId>::new())
        } else {
            Polarization::new(v.clone(), Vec::<EdgeId>::new(), [e])
        });
    }
    if ni == 0 || no == 0 {
        return Err(Error::Domain(format!(
            "`{v}` is a {} of degree {}: there is no canonical way to define a polarization from its rotation",
            if ni == 0 { "source" } else { "sink" },
            ni + no
        )));
    }
    let is_in = |e: &EdgeId| &graph.edge(e).unwrap().head == v;
    let n = rotation.edges.len();
    // the first incoming edge of the in-interval follows an outgoing one
    let start = (0..n)
        .find(|&i| is_in(&rotation.edges[i]) && !is_in(&rotation.edges[(i + n - 1) % n]))
        .unwrap();
    let mut cycle = rotation.edges.clone();
    cycle.rotate_left(start);
    let mut out_order = cycle.split_off(ni);
    out_order.reverse();
    Ok(Polarization {
        vertex: v.clone(),
        in_order: cycle,
        out_order,
    })
}

/// The bimodal rotation `(in_order, reversed out_order)` induced by a polarization.
pub fn polarization_to_rotation(
    polarization: &Polarization,
    graph: &DirectedAcyclicGraph,
) -> Result<Rotation> {
    let v = &polarization.vertex;
    if !graph.contains_vertex(v) {
        return Err(Error::UnknownVertex(v.0.clone()));
    }
    let same = |listed: &[EdgeId], actual: &[EdgeId]| {
        let l: BTreeSet<&EdgeId> = listed.iter().collect();
        l.len() == listed.len() && l == actual.iter().collect()
    };
    if !same(&polarization.in_order, graph.incoming(v))
        || !same(&polarization.out_order, graph.outgoing(v))
    {
        return Err(Error::structural(
            v.as_str(),
            "polarization does not order exactly the incident edges",
        ));
    }
    let edges = polarization
        .in_order
        .iter()
        .chain(polarization.out_order.iter().rev())
        .cloned()
        .collect();
    Ok(Rotation {
        vertex: v.clone(),
        edges,
    })
}

/// Left-to-right orders read directly from the geometry, at every vertex.
pub fn extract_polarization(drawing: &Drawing) -> PolarizationStructure {
    let graph = drawing.graph();
    let mut out = BTreeMap::new();
    for v in graph.vertices() {
        // incoming edges leave v upwards: left to right is clockwise;
        // outgoing edges leave v downwards: left to right is counterclockwise
        let in_order = order_edges(drawing, v, graph.incoming(v).iter().cloned(), |a, b| {
            a.cross(b).cmp(&Rational::zero())
        });
        let out_order = order_edges(drawing, v, graph.outgoing(v).iter().cloned(), |a, b| {
            Rational::zero().cmp(&a.cross(b))
        });
        out.insert(
            v.clone(),
            Polarization {
                vertex: v.clone(),
                in_order,
                out_order,
            },
        );
    }
    PolarizationStructure(out)
}
