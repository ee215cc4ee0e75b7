//! Small named drawings used across tests, examples and the CLI docs.

use std::collections::BTreeMap;

use crate::geometry::rational::{int, parse_rational};
use crate::geometry::{Drawing, PlaneBox, Point};
use crate::graph::{DirectedAcyclicGraph, EdgeId, VertexId};

fn dec(x: &str, y: &str) -> Point {
    Point::new(parse_rational(x).unwrap(), parse_rational(y).unwrap())
}

/// Star-shaped tree: `a -> b`, `b -> c`, `b -> d`.
pub fn tree() -> Drawing {
    Drawing::straight(
        &[("a", 0, 4), ("b", 0, 2), ("c", -1, 0), ("d", 1, 0)],
        &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "b", "d")],
    )
    .unwrap()
}

/// Diamond `a -> {b, c} -> d`.
pub fn diamond() -> Drawing {
    Drawing::straight(
        &[("a", 0, 4), ("b", -1, 2), ("c", 1, 2), ("d", 0, 0)],
        &[
            ("e1", "a", "b"),
            ("e2", "a", "c"),
            ("e3", "b", "d"),
            ("e4", "c", "d"),
        ],
    )
    .unwrap()
}

/// Two edges crossing at `(0, 1)`; not a valid drawing.
pub fn cross() -> Drawing {
    Drawing::straight(
        &[("a", -1, 2), ("b", -1, 0), ("c", 1, 2), ("d", 1, 0)],
        &[("e1", "a", "d"), ("e2", "c", "b")],
    )
    .unwrap()
}

pub fn single_edge() -> Drawing {
    Drawing::straight(&[("a", 0, 1), ("b", 0, 0)], &[("e", "a", "b")]).unwrap()
}

/// Two disjoint single edges side by side.
pub fn two_edges() -> Drawing {
    Drawing::straight(
        &[("a", 0, 1), ("b", 0, 0), ("c", 2, 1), ("d", 2, 0)],
        &[("e", "a", "b"), ("f", "c", "d")],
    )
    .unwrap()
}

fn build(
    vertices: &[(&str, &str, &str)],
    edges: &[(&str, &str, &str, &[(&str, &str)])],
) -> Drawing {
    let graph = DirectedAcyclicGraph::from_triples(
        &vertices.iter().map(|v| v.0).collect::<Vec<_>>(),
        &edges.iter().map(|e| (e.0, e.1, e.2)).collect::<Vec<_>>(),
    )
    .unwrap();
    let positions: BTreeMap<VertexId, Point> = vertices
        .iter()
        .map(|&(v, x, y)| (VertexId::from(v), dec(x, y)))
        .collect();
    let bends: BTreeMap<EdgeId, Vec<Point>> = edges
        .iter()
        .map(|e| {
            (
                EdgeId::from(e.0),
                e.3.iter().map(|&(x, y)| dec(x, y)).collect(),
            )
        })
        .collect();
    Drawing::new(graph, positions, bends).unwrap()
}

/// The nine-vertex upward plane graph of the introductory figure, with the
/// curved edge `v4 -> v7` approximated by a monotone polyline. It has three
/// non-leaf sources (`v2`, `v4`, `v8`) and two non-leaf sinks (`v3`, `v9`).
pub fn fig1() -> Drawing {
    build(
        &[
            ("v1", "-3", "-3"),
            ("v2", "0.5", "2"),
            ("v3", "3", "-2.5"),
            ("v4", "7", "0"),
            ("v5", "-0.5", "-7.5"),
            ("v6", "3.5", "-5.5"),
            ("v7", "6", "-8.5"),
            ("v8", "0.5", "-2"),
            ("v9", "2", "-11"),
        ],
        &[
            ("a01", "v2", "v1", &[]),
            ("a02", "v2", "v3", &[]),
            ("a03", "v4", "v3", &[]),
            ("a04", "v6", "v5", &[]),
            ("a05", "v6", "v7", &[]),
            ("a06", "v1", "v5", &[]),
            ("a07", "v8", "v5", &[]),
            ("a08", "v8", "v6", &[]),
            ("a09", "v4", "v7", &[]),
            ("a10", "v7", "v9", &[]),
            ("a11", "v5", "v9", &[]),
            ("a12", "v4", "v6", &[]),
            (
                "a13",
                "v4",
                "v7",
                &[("8", "-2.5"), ("8.5", "-5.5"), ("7.5", "-7.5")],
            ),
        ],
    )
}

/// The plane string diagram of the boxed-condition figure, including its four
/// isolated vertices `i1..i4`, and its box.
pub fn fig2() -> (Drawing, PlaneBox) {
    let d = build(
        &[
            ("t1", "-1", "1.5"),
            ("t2", "4", "1.5"),
            ("t3", "6.5", "1.5"),
            ("p", "1.5", "0.5"),
            ("q", "0", "-1"),
            ("r", "4", "-2"),
            ("s", "0.5", "-3.5"),
            ("u", "2", "-3.5"),
            ("w", "3", "-5.5"),
            ("x", "-1.5", "-4.5"),
            ("b1", "0.5", "-6.5"),
            ("b3", "6.5", "-6.5"),
            ("i1", "0.35", "0.45"),
            ("i2", "2.7", "-1.7"),
            ("i3", "5.5", "-1"),
            ("i4", "5.5", "-4.5"),
        ],
        &[
            ("f01", "t1", "q", &[]),
            ("f02", "p", "q", &[]),
            ("f03", "p", "s", &[]),
            ("f04", "s", "b1", &[]),
            ("f05", "q", "x", &[]),
            ("f06", "q", "s", &[]),
            ("f07", "t2", "r", &[]),
            ("f08", "p", "r", &[]),
            ("f09", "s", "w", &[]),
            ("f10", "r", "w", &[]),
            ("f11", "p", "u", &[]),
            ("f12", "r", "u", &[]),
            ("f13", "r", "w", &[("4.5", "-3"), ("4", "-4.5")]),
            ("f14", "t3", "b3", &[]),
        ],
    );
    let bx = PlaneBox::new(
        int(-3),
        parse_rational("8.5").unwrap(),
        parse_rational("-6.5").unwrap(),
        parse_rational("1.5").unwrap(),
    )
    .unwrap();
    (d, bx)
}
