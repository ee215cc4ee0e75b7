//! Labeled acyclic directed multigraphs.
//!
//! Vertices and edges are identified by non-empty string ids. Parallel edges
//! are allowed, self-loops and directed cycles are not. All collections are
//! kept in id order so that every traversal is deterministic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(pub String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }

        impl std::borrow::Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

string_id!(
    /// Vertex identifier.
    VertexId
);
string_id!(
    /// Edge identifier.
    EdgeId
);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

impl EdgeRecord {
    pub fn new(
        id: impl Into<EdgeId>,
        tail: impl Into<VertexId>,
        head: impl Into<VertexId>,
    ) -> Self {
        EdgeRecord {
            id: id.into(),
            tail: tail.into(),
            head: head.into(),
        }
    }

    /// The endpoint opposite to `v`.
    pub fn other(&self, v: &VertexId) -> &VertexId {
        if &self.tail == v {
            &self.head
        } else {
            &self.tail
        }
    }
}

/// Outcome of [`check_acyclic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acyclicity {
    /// A topological order (smallest available id first).
    Order(Vec<VertexId>),
    /// A directed cycle given as consecutive edge ids.
    Cycle(Vec<EdgeId>),
}

/// Checks ids and looks for a directed cycle.
///
/// Fails with a structural error on empty or duplicate ids, dangling edge
/// endpoints and self-loops. A self-loop is reported structurally rather than
/// as a one-edge cycle because it can never be drawn monotonically.
pub fn check_acyclic(vertices: &[VertexId], edges: &[EdgeRecord]) -> Result<Acyclicity> {
    let mut vset = BTreeSet::new();
    for v in vertices {
        if v.0.is_empty() {
            return Err(Error::structural("", "empty vertex id"));
        }
        if !vset.insert(v.clone()) {
            return Err(Error::structural(v.as_str(), "duplicate vertex id"));
        }
    }
    let mut eids = BTreeSet::new();
    for e in edges {
        if e.id.0.is_empty() {
            return Err(Error::structural("", "empty edge id"));
        }
        if !eids.insert(e.id.clone()) {
            return Err(Error::structural(e.id.as_str(), "duplicate edge id"));
        }
        for end in [&e.tail, &e.head] {
            if !vset.contains(end) {
                return Err(Error::structural(
                    end.as_str(),
                    format!("edge `{}` references a missing vertex", e.id),
                ));
            }
        }
        if e.tail == e.head {
            return Err(Error::structural(e.id.as_str(), "self-loop"));
        }
    }

    let mut indegree: BTreeMap<&VertexId, usize> = vset.iter().map(|v| (v, 0)).collect();
    let mut outgoing: BTreeMap<&VertexId, Vec<&EdgeRecord>> = BTreeMap::new();
    for e in edges {
        *indegree.get_mut(&e.head).unwrap() += 1;
        outgoing.entry(&e.tail).or_default().push(e);
    }
    let mut ready: BTreeSet<&VertexId> = indegree
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(v, _)| *v)
        .collect();
    let mut order = Vec::with_capacity(vset.len());
    while let Some(v) = ready.pop_first() {
        order.push(v.clone());
        for e in outgoing.get(v).into_iter().flatten() {
            let d = indegree.get_mut(&e.head).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert(&e.head);
            }
        }
    }
    if order.len() == vset.len() {
        return Ok(Acyclicity::Order(order));
    }

    // Every vertex left over has an unprocessed in-edge from another leftover
    // vertex; walking backwards along such edges must revisit a vertex.
    let done: BTreeSet<&VertexId> = order.iter().collect();
    let mut incoming_left: BTreeMap<&VertexId, &EdgeRecord> = BTreeMap::new();
    for e in edges {
        if !done.contains(&e.tail) && !done.contains(&e.head) {
            incoming_left.entry(&e.head).or_insert(e);
        }
    }
    let start = *indegree.iter().find(|(v, _)| !done.contains(*v)).unwrap().0;
    let mut seen: BTreeMap<&VertexId, usize> = BTreeMap::new();
    let mut walk: Vec<&EdgeRecord> = Vec::new();
    let mut cur = start;
    loop {
        if let Some(&pos) = seen.get(cur) {
            let mut cycle: Vec<EdgeId> = walk[pos..].iter().map(|e| e.id.clone()).collect();
            cycle.reverse();
            // start the cycle at its smallest edge id
            let min = (0..cycle.len()).min_by_key(|&i| &cycle[i]).unwrap();
            cycle.rotate_left(min);
            return Ok(Acyclicity::Cycle(cycle));
        }
        seen.insert(cur, walk.len());
        let e = incoming_left[cur];
        walk.push(e);
        cur = &e.tail;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Source,
    Sink,
    Processive,
    Isolated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexClass {
    pub kind: VertexKind,
    pub is_leaf: bool,
}

/// Which side of the original vertex a stub was attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StubDirection {
    /// `leaf -> v`, added above a source.
    InputStub,
    /// `v -> leaf`, added below a sink.
    OutputStub,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StubEntry {
    pub leaf: VertexId,
    pub edge: EdgeId,
    pub direction: StubDirection,
}

/// Leaves and edges added by [`DirectedAcyclicGraph::np_extend`], keyed by the
/// original vertex they are attached to.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionMapping {
    pub stubs: BTreeMap<VertexId, StubEntry>,
}

impl ExtensionMapping {
    pub fn is_empty(&self) -> bool {
        self.stubs.is_empty()
    }

    pub fn is_stub_edge(&self, e: &EdgeId) -> bool {
        self.stubs.values().any(|s| &s.edge == e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualEdge {
    pub top: VertexId,
    pub bottom: VertexId,
    pub edge: EdgeId,
}

/// Isolated vertex → the virtual edge replacing it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualizationMapping {
    pub virtual_edges: BTreeMap<VertexId, VirtualEdge>,
}

impl VirtualizationMapping {
    pub fn is_empty(&self) -> bool {
        self.virtual_edges.is_empty()
    }
}

pub fn in_leaf_id(v: &VertexId) -> VertexId {
    VertexId(format!("{v}__in_leaf"))
}
pub fn in_stub_id(v: &VertexId) -> EdgeId {
    EdgeId(format!("{v}__in_stub"))
}
pub fn out_leaf_id(v: &VertexId) -> VertexId {
    VertexId(format!("{v}__out_leaf"))
}
pub fn out_stub_id(v: &VertexId) -> EdgeId {
    EdgeId(format!("{v}__out_stub"))
}
pub fn virtual_top_id(v: &VertexId) -> VertexId {
    VertexId(format!("{v}__top"))
}
pub fn virtual_bottom_id(v: &VertexId) -> VertexId {
    VertexId(format!("{v}__bot"))
}
pub fn virtual_edge_id(v: &VertexId) -> EdgeId {
    EdgeId(format!("{v}__virt"))
}

/// A validated labeled acyclic directed multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedAcyclicGraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, EdgeRecord>,
    incoming: BTreeMap<VertexId, Vec<EdgeId>>,
    outgoing: BTreeMap<VertexId, Vec<EdgeId>>,
}

impl DirectedAcyclicGraph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = EdgeRecord>,
    ) -> Result<Self> {
        let vertices: Vec<VertexId> = vertices.into_iter().collect();
        let edges: Vec<EdgeRecord> = edges.into_iter().collect();
        if let Acyclicity::Cycle(c) = check_acyclic(&vertices, &edges)? {
            return Err(Error::Cycle(c.into_iter().map(|e| e.0).collect()));
        }
        let mut incoming: BTreeMap<VertexId, Vec<EdgeId>> =
            vertices.iter().map(|v| (v.clone(), Vec::new())).collect();
        let mut outgoing = incoming.clone();
        let edges: BTreeMap<EdgeId, EdgeRecord> =
            edges.into_iter().map(|e| (e.id.clone(), e)).collect();
        for e in edges.values() {
            incoming.get_mut(&e.head).unwrap().push(e.id.clone());
            outgoing.get_mut(&e.tail).unwrap().push(e.id.clone());
        }
        Ok(DirectedAcyclicGraph {
            vertices: vertices.into_iter().collect(),
            edges,
            incoming,
            outgoing,
        })
    }

    /// Convenience constructor from `(edge, tail, head)` triples.
    pub fn from_triples(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|&v| VertexId::from(v)),
            edges.iter().map(|&(e, t, h)| EdgeRecord::new(e, t, h)),
        )
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &VertexId> + Clone {
        self.vertices.iter()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &EdgeRecord> + Clone {
        self.edges.values()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn contains_edge(&self, e: &EdgeId) -> bool {
        self.edges.contains_key(e)
    }

    pub fn edge(&self, e: &EdgeId) -> Option<&EdgeRecord> {
        self.edges.get(e)
    }

    /// `I(v)`, in edge-id order.
    pub fn incoming(&self, v: &VertexId) -> &[EdgeId] {
        self.incoming.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `O(v)`, in edge-id order.
    pub fn outgoing(&self, v: &VertexId) -> &[EdgeId] {
        self.outgoing.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `E(v)`: incoming then outgoing.
    pub fn incident(&self, v: &VertexId) -> impl Iterator<Item = &EdgeId> {
        self.incoming(v).iter().chain(self.outgoing(v))
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.incoming(v).len() + self.outgoing(v).len()
    }

    pub fn topological_order(&self) -> Vec<VertexId> {
        let vs: Vec<VertexId> = self.vertices.iter().cloned().collect();
        let es: Vec<EdgeRecord> = self.edges.values().cloned().collect();
        match check_acyclic(&vs, &es) {
            Ok(Acyclicity::Order(o)) => o,
            _ => unreachable!("validated at construction"),
        }
    }

    pub fn classify_vertex(&self, v: &VertexId) -> Result<VertexClass> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v.0.clone()));
        }
        let (i, o) = (self.incoming(v).len(), self.outgoing(v).len());
        let kind = match (i, o) {
            (0, 0) => VertexKind::Isolated,
            (0, _) => VertexKind::Source,
            (_, 0) => VertexKind::Sink,
            _ => VertexKind::Processive,
        };
        Ok(VertexClass {
            kind,
            is_leaf: i + o == 1,
        })
    }

    /// Processive or a leaf: the vertices where rotations and polarizations
    /// determine each other.
    pub fn is_processive_or_leaf(&self, v: &VertexId) -> bool {
        let (i, o) = (self.incoming(v).len(), self.outgoing(v).len());
        (i > 0 && o > 0) || i + o == 1
    }

    /// Returns the sources and sinks that are not leaves; the graph is
    /// processive iff the list is empty.
    pub fn processive_violators(&self) -> Result<Vec<VertexId>> {
        if self.is_empty() {
            return Err(Error::Domain(
                "a processive graph must be non-empty".to_owned(),
            ));
        }
        Ok(self
            .vertices
            .iter()
            .filter(|v| !self.is_processive_or_leaf(v))
            .cloned()
            .collect())
    }

    pub fn is_processive_graph(&self) -> Result<bool> {
        Ok(self.processive_violators()?.is_empty())
    }

    pub fn isolated_vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter().filter(|v| self.degree(v) == 0)
    }

    fn ensure_fresh_vertex(&self, v: &VertexId) -> Result<()> {
        if self.vertices.contains(v) {
            Err(Error::structural(
                v.as_str(),
                "fresh vertex id collides with an existing vertex",
            ))
        } else {
            Ok(())
        }
    }

    fn ensure_fresh_edge(&self, e: &EdgeId) -> Result<()> {
        if self.edges.contains_key(e) {
            Err(Error::structural(
                e.as_str(),
                "fresh edge id collides with an existing edge",
            ))
        } else {
            Ok(())
        }
    }

    /// Adds an input stub above every non-leaf source and an output stub below
    /// every non-leaf sink. Leaf sources and sinks are left alone.
    pub fn np_extend(&self) -> Result<(DirectedAcyclicGraph, ExtensionMapping)> {
        if let Some(v) = self.isolated_vertices().next() {
            return Err(Error::Domain(format!(
                "isolated vertex `{v}` has no extension; virtualize it first"
            )));
        }
        let mut mapping = ExtensionMapping::default();
        let mut vertices: Vec<VertexId> = self.vertices.iter().cloned().collect();
        let mut edges: Vec<EdgeRecord> = self.edges.values().cloned().collect();
        for v in &self.vertices {
            let (i, o) = (self.incoming(v).len(), self.outgoing(v).len());
            if i + o < 2 || (i > 0 && o > 0) {
                continue;
            }
            let entry = if i == 0 {
                let (leaf, edge) = (in_leaf_id(v), in_stub_id(v));
                edges.push(EdgeRecord::new(edge.clone(), leaf.clone(), v.clone()));
                StubEntry {
                    leaf,
                    edge,
                    direction: StubDirection::InputStub,
                }
            } else {
                let (leaf, edge) = (out_leaf_id(v), out_stub_id(v));
                edges.push(EdgeRecord::new(edge.clone(), v.clone(), leaf.clone()));
                StubEntry {
                    leaf,
                    edge,
                    direction: StubDirection::OutputStub,
                }
            };
            self.ensure_fresh_vertex(&entry.leaf)?;
            self.ensure_fresh_edge(&entry.edge)?;
            vertices.push(entry.leaf.clone());
            mapping.stubs.insert(v.clone(), entry);
        }
        Ok((DirectedAcyclicGraph::new(vertices, edges)?, mapping))
    }

    /// Replaces every isolated vertex `v` by a virtual edge `v__top -> v__bot`.
    pub fn virtualize_isolated(&self) -> Result<(DirectedAcyclicGraph, VirtualizationMapping)> {
        let mut mapping = VirtualizationMapping::default();
        let isolated: BTreeSet<&VertexId> = self.isolated_vertices().collect();
        let mut vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .filter(|v| !isolated.contains(v))
            .cloned()
            .collect();
        let mut edges: Vec<EdgeRecord> = self.edges.values().cloned().collect();
        for v in isolated {
            let ve = VirtualEdge {
                top: virtual_top_id(v),
                bottom: virtual_bottom_id(v),
                edge: virtual_edge_id(v),
            };
            self.ensure_fresh_vertex(&ve.top)?;
            self.ensure_fresh_vertex(&ve.bottom)?;
            self.ensure_fresh_edge(&ve.edge)?;
            vertices.push(ve.top.clone());
            vertices.push(ve.bottom.clone());
            edges.push(EdgeRecord::new(
                ve.edge.clone(),
                ve.top.clone(),
                ve.bottom.clone(),
            ));
            mapping.virtual_edges.insert(v.clone(), ve);
        }
        Ok((DirectedAcyclicGraph::new(vertices, edges)?, mapping))
    }

    /// Inverse of [`np_extend`](Self::np_extend): drops the mapped leaves and stub edges.
    pub fn remove_extension(&self, mapping: &ExtensionMapping) -> Result<DirectedAcyclicGraph> {
        let leaves: BTreeSet<&VertexId> = mapping.stubs.values().map(|s| &s.leaf).collect();
        let stubs: BTreeSet<&EdgeId> = mapping.stubs.values().map(|s| &s.edge).collect();
        DirectedAcyclicGraph::new(
            self.vertices
                .iter()
                .filter(|v| !leaves.contains(v))
                .cloned(),
            self.edges
                .values()
                .filter(|e| !stubs.contains(&e.id))
                .cloned(),
        )
    }

    /// Inverse of [`virtualize_isolated`](Self::virtualize_isolated).
    pub fn devirtualize(&self, mapping: &VirtualizationMapping) -> Result<DirectedAcyclicGraph> {
        let mut drop_v = BTreeSet::new();
        let mut drop_e = BTreeSet::new();
        for ve in mapping.virtual_edges.values() {
            drop_v.insert(&ve.top);
            drop_v.insert(&ve.bottom);
            drop_e.insert(&ve.edge);
        }
        DirectedAcyclicGraph::new(
            self.vertices
                .iter()
                .filter(|v| !drop_v.contains(v))
                .cloned()
                .chain(mapping.virtual_edges.keys().cloned()),
            self.edges
                .values()
                .filter(|e| !drop_e.contains(&e.id))
                .cloned(),
        )
    }

    /// Connected components of the underlying undirected graph, each as a
    /// sorted vertex list; components are ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.push(v.clone());
                for e in self.incident(v) {
                    let w = self.edges[e].other(v);
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[&str]) -> Vec<VertexId> {
        v.iter().map(|&s| s.into()).collect()
    }

    fn diamond() -> DirectedAcyclicGraph {
        DirectedAcyclicGraph::from_triples(
            &["a", "b", "c", "d"],
            &[
                ("e1", "a", "b"),
                ("e2", "a", "c"),
                ("e3", "b", "d"),
                ("e4", "c", "d"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn path_is_acyclic() {
        let r = check_acyclic(
            &ids(&["a", "b", "c"]),
            &[
                EdgeRecord::new("e1", "a", "b"),
                EdgeRecord::new("e2", "b", "c"),
            ],
        )
        .unwrap();
        assert_eq!(r, Acyclicity::Order(ids(&["a", "b", "c"])));
    }

    #[test]
    fn two_cycle_is_reported() {
        let r = check_acyclic(
            &ids(&["a", "b"]),
            &[
                EdgeRecord::new("e1", "a", "b"),
                EdgeRecord::new("e2", "b", "a"),
            ],
        )
        .unwrap();
        assert_eq!(r, Acyclicity::Cycle(vec!["e1".into(), "e2".into()]));
    }

    #[test]
    fn longer_cycle_with_tail() {
        let r = check_acyclic(
            &ids(&["a", "b", "c", "d", "z"]),
            &[
                EdgeRecord::new("x", "z", "a"),
                EdgeRecord::new("p", "a", "b"),
                EdgeRecord::new("q", "b", "c"),
                EdgeRecord::new("r", "c", "a"),
                EdgeRecord::new("s", "c", "d"),
            ],
        )
        .unwrap();
        assert_eq!(
            r,
            Acyclicity::Cycle(vec!["p".into(), "q".into(), "r".into()])
        );
    }

    #[test]
    fn structural_errors() {
        let dup = check_acyclic(&ids(&["a", "a"]), &[]);
        assert!(matches!(dup, Err(Error::Structural { id, .. }) if id == "a"));
        let dangling = check_acyclic(&ids(&["a"]), &[EdgeRecord::new("e", "a", "zz")]);
        assert!(matches!(dangling, Err(Error::Structural { id, .. }) if id == "zz"));
        let dup_edge = check_acyclic(
            &ids(&["a", "b"]),
            &[
                EdgeRecord::new("e", "a", "b"),
                EdgeRecord::new("e", "a", "b"),
            ],
        );
        assert!(matches!(dup_edge, Err(Error::Structural { id, .. }) if id == "e"));
        let lp = check_acyclic(&ids(&["a"]), &[EdgeRecord::new("e", "a", "a")]);
        assert!(matches!(lp, Err(Error::Structural { .. })));
    }

    #[test]
    fn classification() {
        let g = DirectedAcyclicGraph::from_triples(
            &["u", "v", "w", "x", "iso"],
            &[("e1", "u", "v"), ("e2", "v", "w"), ("e3", "v", "x")],
        )
        .unwrap();
        let c = g.classify_vertex(&"v".into()).unwrap();
        assert_eq!(
            c,
            VertexClass {
                kind: VertexKind::Processive,
                is_leaf: false
            }
        );
        let c = g.classify_vertex(&"u".into()).unwrap();
        assert_eq!(
            c,
            VertexClass {
                kind: VertexKind::Source,
                is_leaf: true
            }
        );
        let c = g.classify_vertex(&"iso".into()).unwrap();
        assert_eq!(
            c,
            VertexClass {
                kind: VertexKind::Isolated,
                is_leaf: false
            }
        );
        assert!(matches!(
            g.classify_vertex(&"nope".into()),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn processive_checks() {
        let single = DirectedAcyclicGraph::from_triples(&["a", "b"], &[("e", "a", "b")]).unwrap();
        assert!(single.is_processive_graph().unwrap());
        assert_eq!(diamond().processive_violators().unwrap(), ids(&["a", "d"]));
        let (ext, _) = diamond().np_extend().unwrap();
        assert!(ext.is_processive_graph().unwrap());
        let empty = DirectedAcyclicGraph::from_triples(&[], &[]).unwrap();
        assert!(matches!(empty.is_processive_graph(), Err(Error::Domain(_))));
    }

    #[test]
    fn np_extend_diamond() {
        let (ext, map) = diamond().np_extend().unwrap();
        assert_eq!(ext.vertex_count(), 6);
        assert_eq!(ext.edge_count(), 6);
        let a = &map.stubs[&VertexId::from("a")];
        assert_eq!(a.direction, StubDirection::InputStub);
        assert_eq!(ext.outgoing(&a.leaf), std::slice::from_ref(&a.edge));
        assert_eq!(ext.incoming(&"a".into()), std::slice::from_ref(&a.edge));
        let d = &map.stubs[&VertexId::from("d")];
        assert_eq!(d.direction, StubDirection::OutputStub);
        assert_eq!(ext.outgoing(&"d".into()), std::slice::from_ref(&d.edge));
        assert_eq!(ext.remove_extension(&map).unwrap(), diamond());
    }

    #[test]
    fn np_extend_single_edge_is_identity() {
        let g = DirectedAcyclicGraph::from_triples(&["a", "b"], &[("e", "a", "b")]).unwrap();
        let (ext, map) = g.np_extend().unwrap();
        assert_eq!(ext, g);
        assert!(map.is_empty());
    }

    #[test]
    fn np_extend_rejects_isolated() {
        let g = DirectedAcyclicGraph::from_triples(&["a", "b", "v"], &[("e", "a", "b")]).unwrap();
        assert!(matches!(g.np_extend(), Err(Error::Domain(m)) if m.contains("`v`")));
    }

    #[test]
    fn np_extend_collision() {
        let g = DirectedAcyclicGraph::from_triples(
            &["a", "b", "c", "a__in_leaf"],
            &[
                ("e1", "a", "b"),
                ("e2", "a", "c"),
                ("e3", "a__in_leaf", "b"),
            ],
        );
        // a__in_leaf is itself a leaf source, a is a non-leaf source
        let err = g.unwrap().np_extend().unwrap_err();
        assert!(matches!(err, Error::Structural { id, .. } if id == "a__in_leaf"));
    }

    #[test]
    fn virtualize_single_vertex() {
        let g = DirectedAcyclicGraph::from_triples(&["v"], &[]).unwrap();
        let (vg, map) = g.virtualize_isolated().unwrap();
        assert_eq!(
            vg.vertices().cloned().collect::<Vec<_>>(),
            ids(&["v__bot", "v__top"])
        );
        assert_eq!(
            vg.edges().next().unwrap(),
            &EdgeRecord::new("v__virt", "v__top", "v__bot")
        );
        assert_eq!(map.virtual_edges.len(), 1);
        assert_eq!(vg.devirtualize(&map).unwrap(), g);
    }

    #[test]
    fn virtualize_without_isolated_is_identity() {
        let (vg, map) = diamond().virtualize_isolated().unwrap();
        assert_eq!(vg, diamond());
        assert!(map.is_empty());
    }

    #[test]
    fn virtualize_collision() {
        let g = DirectedAcyclicGraph::from_triples(&["v", "v__top", "x"], &[("e", "v__top", "x")])
            .unwrap();
        assert!(matches!(
            g.virtualize_isolated(),
            Err(Error::Structural { .. })
        ));
    }

    #[test]
    fn components_sorted() {
        let g = DirectedAcyclicGraph::from_triples(
            &["a", "b", "c", "d", "e"],
            &[("x", "c", "a"), ("y", "d", "e")],
        )
        .unwrap();
        assert_eq!(
            g.components(),
            vec![ids(&["a", "c"]), ids(&["b"]), ids(&["d", "e"])]
        );
    }
}
