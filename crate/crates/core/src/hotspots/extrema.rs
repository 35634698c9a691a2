use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{diameter, distance, distances_from, GraphPoint, Location, MetricGraph};
use crate::spectral::EdgeWave;

/// Interior critical points closer than this (relative to the edge length)
/// to an endpoint are folded into the endpoint.
const SNAP: f64 = 1e-12;

/// Relative tie threshold for grouping extremum points.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// A point in a report: `vertex` is set when the point is a vertex, in which
/// case `(edge, t)` is that vertex's canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportPoint {
    pub edge: usize,
    pub t: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
}

impl ReportPoint {
    pub fn canonical(g: &MetricGraph, p: GraphPoint) -> Self {
        match g.locate(p) {
            Location::Vertex(v) => {
                let rep = g.vertex_point(v).expect("vertex on an edge");
                ReportPoint {
                    edge: rep.edge,
                    t: rep.t,
                    vertex: Some(v),
                }
            }
            Location::Interior { edge, t } => ReportPoint {
                edge,
                t,
                vertex: None,
            },
        }
    }

    pub fn point(&self) -> GraphPoint {
        GraphPoint {
            edge: self.edge,
            t: self.t,
        }
    }
}

/// Global extrema of an edgewise function together with the geometry of
/// where they sit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremumReport {
    pub max_points: Vec<ReportPoint>,
    pub max_value: f64,
    pub min_points: Vec<ReportPoint>,
    pub min_value: f64,
    /// Shortest distance between a maximum point and a minimum point.
    pub extrema_distance: f64,
    /// `pair_distances[i][j]` is the distance from `max_points[i]` to
    /// `min_points[j]`.
    pub pair_distances: Vec<Vec<f64>>,
    pub diameter: f64,
    /// Largest distance from an extremum point to the nearest degree-one
    /// vertex.
    pub boundary_margin: f64,
    /// The function is constant (max equals min up to the tie threshold).
    pub degenerate: bool,
}

/// Endpoints and interior critical points of `a cos(k t) + b sin(k t)` (or
/// of `a + b t` when `k = 0`) on `[0, length]`, sorted by `t`.
pub fn edge_extrema(w: &EdgeWave, k: f64, length: f64) -> Result<Vec<(f64, f64)>> {
    if !(length.is_finite() && length > 0.0) {
        return Err(Error::Domain(format!(
            "edge length {length} must be positive"
        )));
    }
    let mut out = vec![(0.0, w.value(k, 0.0))];
    if k > 0.0 && (w.a != 0.0 || w.b != 0.0) {
        // a cos + b sin = R cos(k t - phase); critical where k t = phase + n pi
        let phase = w.b.atan2(w.a);
        let radius = w.a.hypot(w.b);
        let mut n = (-phase / PI).ceil();
        loop {
            let t = (phase + n * PI) / k;
            if t >= length * (1.0 - SNAP) {
                break;
            }
            if t > length * SNAP {
                let sign = if (n as i64).rem_euclid(2) == 0 {
                    1.0
                } else {
                    -1.0
                };
                out.push((t, sign * radius));
            }
            n += 1.0;
        }
    }
    out.push((length, w.value(k, length)));
    Ok(out)
}

/// Largest |f| over the graph.
pub fn sup_norm(g: &MetricGraph, f: &[EdgeWave], k: f64) -> Result<f64> {
    let mut sup = 0.0f64;
    for w in f {
        for (_, x) in edge_extrema(w, k, g.length(w.edge))? {
            sup = sup.max(x.abs());
        }
    }
    Ok(sup)
}

fn check_function(g: &MetricGraph, f: &[EdgeWave]) -> Result<()> {
    if f.len() != g.edge_count() || f.iter().enumerate().any(|(i, w)| w.edge != i) {
        return Err(Error::Validation(format!(
            "function must list one wave per edge in edge order ({} edges, {} waves)",
            g.edge_count(),
            f.len()
        )));
    }
    Ok(())
}

fn push_unique(points: &mut Vec<ReportPoint>, p: ReportPoint) {
    let duplicate = points.iter().any(|q| match (q.vertex, p.vertex) {
        (Some(a), Some(b)) => a == b,
        (None, None) => q.edge == p.edge && q.t == p.t,
        _ => false,
    });
    if !duplicate {
        points.push(p);
    }
}

/// Locates all global maxima and minima of `f` from the closed-form
/// candidate sets of every edge.
pub fn global_extrema(g: &MetricGraph, f: &[EdgeWave], k: f64) -> Result<ExtremumReport> {
    check_function(g, f)?;
    let diam = diameter(g)?;

    let mut candidates = Vec::new();
    for w in f {
        for (t, x) in edge_extrema(w, k, g.length(w.edge))? {
            candidates.push((ReportPoint::canonical(g, GraphPoint { edge: w.edge, t }), x));
        }
    }
    let max_value = candidates
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_value = candidates.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let sup = max_value.abs().max(min_value.abs());
    let tie = TIE_TOLERANCE * sup;

    let mut max_points = Vec::new();
    let mut min_points = Vec::new();
    for &(p, x) in &candidates {
        if x >= max_value - tie {
            push_unique(&mut max_points, p);
        }
        if x <= min_value + tie {
            push_unique(&mut min_points, p);
        }
    }
    let order = |a: &ReportPoint, b: &ReportPoint| a.edge.cmp(&b.edge).then(a.t.total_cmp(&b.t));
    max_points.sort_by(order);
    min_points.sort_by(order);

    let pair_distances = max_points
        .iter()
        .map(|p| {
            min_points
                .iter()
                .map(|q| distance(g, p.point(), q.point()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let extrema_distance = pair_distances
        .iter()
        .flatten()
        .copied()
        .fold(f64::INFINITY, f64::min);

    let leaves = g.boundary_vertices();
    let mut boundary_margin = 0.0f64;
    for p in max_points.iter().chain(&min_points) {
        let d = distances_from(g, p.point())?;
        let nearest = leaves.iter().map(|&v| d[v]).fold(f64::INFINITY, f64::min);
        boundary_margin = boundary_margin.max(nearest);
    }

    Ok(ExtremumReport {
        max_points,
        max_value,
        min_points,
        min_value,
        extrema_distance,
        pair_distances,
        diameter: diam.length,
        boundary_margin,
        degenerate: max_value - min_value <= tie,
    })
}

/// All extrema lie within `tol` of the boundary.
pub fn hot_spots_holds(report: &ExtremumReport, tol: f64) -> bool {
    report.boundary_margin <= tol
}

/// Default boundary tolerance: `1e-6` times the shortest edge.
pub fn default_tolerance(g: &MetricGraph) -> f64 {
    1e-6 * g.shortest_edge().unwrap_or(0.0)
}
