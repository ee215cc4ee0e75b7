#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use upward_core::geometry::{validate_drawing, Drawing, Point};
use upward_core::graph::{DirectedAcyclicGraph, EdgeId, EdgeRecord, VertexId};

/// Random drawing of up to `n` vertices on a small grid, edges added
/// greedily while the drawing stays valid; about a third get one bend.
pub fn valid_drawing(seed: u64, n: usize, m: usize) -> Drawing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<VertexId> = (0..n).map(|i| VertexId::from(format!("v{i}"))).collect();
    let mut ys: Vec<i64> = (0..3 * n as i64).collect();
    for i in (1..ys.len()).rev() {
        ys.swap(i, rng.random_range(0..=i));
    }
    let pos: BTreeMap<VertexId, Point> = ids
        .iter()
        .zip(&ys)
        .map(|(v, &y)| {
            (
                v.clone(),
                Point::from_ints(rng.random_range(0..3 * n as i64), y),
            )
        })
        .collect();
    let mut edges: Vec<EdgeRecord> = Vec::new();
    let mut bends: BTreeMap<EdgeId, Vec<Point>> = BTreeMap::new();
    let mut current = build(&ids, &edges, &pos, &bends).unwrap();
    for attempt in 0..m * 10 {
        if edges.len() >= m {
            break;
        }
        let (u, v) = (&ids[rng.random_range(0..n)], &ids[rng.random_range(0..n)]);
        if pos[u].y <= pos[v].y {
            continue;
        }
        let id = EdgeId::from(format!("e{attempt:03}"));
        let mut trial_bends = bends.clone();
        if rng.random_range(0..3) == 0 {
            // a bend strictly between the endpoint heights, pushed sideways
            let mid = pos[u].lerp(&pos[v], &upward_core::geometry::rational::ratio(1, 2));
            let dx = upward_core::geometry::rational::int(rng.random_range(-3..=3));
            trial_bends.insert(id.clone(), vec![Point::new(&mid.x + dx, mid.y.clone())]);
        }
        let mut trial = edges.clone();
        trial.push(EdgeRecord::new(id, u.clone(), v.clone()));
        let d = build(&ids, &trial, &pos, &trial_bends).unwrap();
        if validate_drawing(&d).ok {
            edges = trial;
            bends = trial_bends;
            current = d;
        }
    }
    current
}

/// Random straight-line drawing that is usually invalid: edges are added
/// without any check except monotone endpoints.
pub fn arbitrary_drawing(seed: u64, n: usize, m: usize) -> Drawing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<VertexId> = (0..n).map(|i| VertexId::from(format!("v{i}"))).collect();
    let pos: BTreeMap<VertexId, Point> = ids
        .iter()
        .enumerate()
        .map(|(i, v)| {
            (
                v.clone(),
                Point::from_ints(
                    rng.random_range(0..5),
                    i as i64 * 2 + rng.random_range(0..2),
                ),
            )
        })
        .collect();
    let mut edges = Vec::new();
    for k in 0..m {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if pos[&ids[i]].y > pos[&ids[j]].y {
            edges.push(EdgeRecord::new(
                format!("e{k:02}"),
                ids[i].clone(),
                ids[j].clone(),
            ));
        }
    }
    build(&ids, &edges, &pos, &BTreeMap::new()).unwrap()
}

fn build(
    ids: &[VertexId],
    edges: &[EdgeRecord],
    pos: &BTreeMap<VertexId, Point>,
    bends: &BTreeMap<EdgeId, Vec<Point>>,
) -> upward_core::Result<Drawing> {
    let g = DirectedAcyclicGraph::new(ids.iter().cloned(), edges.iter().cloned())?;
    Drawing::new(g, pos.clone(), bends.clone())
}

pub fn corpus() -> Vec<Drawing> {
    (0..120)
        .map(|s| valid_drawing(s, 2 + (s % 8) as usize, (s % 13) as usize))
        .collect()
}
