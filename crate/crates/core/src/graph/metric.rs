use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use super::{GraphPoint, MetricGraph, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq)]
struct Queued {
    dist: f64,
    vertex: VertexId,
}

impl Eq for Queued {}

impl Ord for Queued {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, ties broken by vertex id
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(g: &MetricGraph, seeds: &[(VertexId, f64)]) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; g.vertex_count()];
    let mut heap = BinaryHeap::new();
    for &(v, d) in seeds {
        if d < dist[v] {
            dist[v] = d;
            heap.push(Queued { dist: d, vertex: v });
        }
    }
    while let Some(Queued { dist: d, vertex }) = heap.pop() {
        if d > dist[vertex] {
            continue;
        }
        for (w, e) in g.neighbours(vertex) {
            let nd = d + g.length(e);
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Queued {
                    dist: nd,
                    vertex: w,
                });
            }
        }
    }
    dist
}

/// Path distance from `p` to every vertex.
pub fn distances_from(g: &MetricGraph, p: GraphPoint) -> Result<Vec<f64>> {
    g.check_edge(p.edge)?;
    let e = g.edge(p.edge);
    Ok(dijkstra(g, &[(e.source, p.t), (e.target, e.length - p.t)]))
}

/// Intrinsic (shortest path) distance between two points.
pub fn distance(g: &MetricGraph, p: GraphPoint, q: GraphPoint) -> Result<f64> {
    g.require_connected()?;
    g.check_edge(q.edge)?;
    let from_p = distances_from(g, p)?;
    let eq = g.edge(q.edge);
    let mut d = (from_p[eq.source] + q.t).min(from_p[eq.target] + (eq.length - q.t));
    if p.edge == q.edge {
        d = d.min((p.t - q.t).abs());
    }
    Ok(d)
}

/// Diameter of a tree and a pair of vertices realising it.
#[derive(Clone, Debug, Serialize)]
pub struct Diameter {
    pub length: f64,
    pub ends: (VertexId, VertexId),
    pub points: (GraphPoint, GraphPoint),
}

/// Farthest vertex from `start`; ties go to the smallest id.
fn farthest(g: &MetricGraph, start: VertexId) -> (VertexId, f64) {
    let dist = dijkstra(g, &[(start, 0.0)]);
    dist.iter().enumerate().fold(
        (start, 0.0),
        |best, (v, &d)| if d > best.1 { (v, d) } else { best },
    )
}

/// Tree diameter by two farthest-vertex sweeps; exact on trees with positive
/// edge lengths, where the farthest point from any point is a leaf.
pub fn diameter(g: &MetricGraph) -> Result<Diameter> {
    if !g.is_tree() {
        return Err(Error::Unsupported(
            "diameter is only implemented for trees".into(),
        ));
    }
    if g.edge_count() == 0 {
        return Err(Error::Validation("graph has no edges".into()));
    }
    let (a, _) = farthest(g, 0);
    let (b, length) = farthest(g, a);
    Ok(Diameter {
        length,
        ends: (a, b),
        points: (g.vertex_point(a)?, g.vertex_point(b)?),
    })
}
