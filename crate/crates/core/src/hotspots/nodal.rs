use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::extrema::{sup_norm, ReportPoint};
use crate::error::{Error, Result};
use crate::graph::{End, GraphPoint, MetricGraph};
use crate::spectral::EdgeWave;

/// An edge counts as identically zero when `max(|a|, |b|)` is below this
/// fraction of the sup norm.
pub const ZERO_EDGE_TOLERANCE: f64 = 1e-10;

/// Vertex values below this fraction of the sup norm are zeros.
const ZERO_VERTEX_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodalReport {
    /// Isolated zeros, sorted by edge and position; vertices included.
    pub zero_points: Vec<ReportPoint>,
    /// Edges on which the function vanishes identically.
    pub zero_edges: Vec<usize>,
    /// Connected components of `{f != 0}`.
    pub domain_count: usize,
}

/// Zeros of `a cos(k t) + b sin(k t)` (or `a + b t`) strictly inside
/// `(0, length)`, at least `margin` away from both ends.
fn interior_zeros(w: &EdgeWave, k: f64, length: f64, margin: f64) -> Vec<f64> {
    let mut out = Vec::new();
    if k == 0.0 {
        if w.b != 0.0 {
            let t = -w.a / w.b;
            if t > margin && t < length - margin {
                out.push(t);
            }
        }
        return out;
    }
    // R cos(k t - phase) vanishes at k t = phase + pi/2 + n pi
    let shift = w.b.atan2(w.a) + FRAC_PI_2;
    let mut n = (-shift / PI).ceil();
    loop {
        let t = (shift + n * PI) / k;
        if t >= length - margin {
            break;
        }
        if t > margin {
            out.push(t);
        }
        n += 1.0;
    }
    out
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Nodal structure of `f`: zeros located in closed form per edge, domains
/// counted as connected components of the complement of the zero set.
pub fn nodal_domains(g: &MetricGraph, f: &[EdgeWave], k: f64) -> Result<NodalReport> {
    if f.len() != g.edge_count() {
        return Err(Error::Validation("one wave per edge expected".into()));
    }
    let sup = sup_norm(g, f, k)?;
    if sup == 0.0 {
        return Err(Error::Domain("function vanishes identically".into()));
    }

    let vertex_zero: Vec<bool> = (0..g.vertex_count())
        .map(|v| {
            g.incident(v).first().is_none_or(|end| {
                let t = match end.end {
                    End::Source => 0.0,
                    End::Target => g.length(end.edge),
                };
                f[end.edge].value(k, t).abs() <= ZERO_VERTEX_TOLERANCE * sup
            })
        })
        .collect();

    let mut zero_points = Vec::new();
    let mut zero_edges = Vec::new();
    // segment ids per edge: first touches the source, last the target
    let mut segments: Vec<Option<(usize, usize)>> = Vec::with_capacity(f.len());
    let mut next = 0;
    for w in f {
        let length = g.length(w.edge);
        let scale = if k == 0.0 { length } else { 1.0 };
        if w.a.abs().max(w.b.abs() * scale) <= ZERO_EDGE_TOLERANCE * sup {
            zero_edges.push(w.edge);
            segments.push(None);
            continue;
        }
        let zeros = interior_zeros(w, k, length, 1e-12 * length);
        for &t in &zeros {
            zero_points.push(ReportPoint::canonical(g, GraphPoint { edge: w.edge, t }));
        }
        segments.push(Some((next, next + zeros.len())));
        next += zeros.len() + 1;
    }

    let mut dsu = Dsu((0..next).collect());
    for (v, &zero) in vertex_zero.iter().enumerate() {
        if zero {
            if g.degree(v) > 0 {
                zero_points.push(ReportPoint::canonical(g, g.vertex_point(v)?));
            }
            continue;
        }
        let touching: Vec<usize> = g
            .incident(v)
            .iter()
            .filter_map(|end| {
                segments[end.edge].map(|(first, last)| match end.end {
                    End::Source => first,
                    End::Target => last,
                })
            })
            .collect();
        for pair in touching.windows(2) {
            dsu.union(pair[0], pair[1]);
        }
    }
    let domain_count = (0..next).filter(|&s| dsu.find(s) == s).count();
    zero_points.sort_by(|a, b| a.edge.cmp(&b.edge).then(a.t.total_cmp(&b.t)));

    Ok(NodalReport {
        zero_points,
        zero_edges,
        domain_count,
    })
}
