use serde::{Deserialize, Serialize};

use crate::graph::{End, MetricGraph, VertexCondition};

/// Restriction of an eigenfunction to one edge.
///
/// For `k > 0` the edge carries `a cos(k t) + b sin(k t)`, for `k = 0` the
/// affine function `a + b t`. `k` is shared by all edges of an eigenfunction
/// and is passed alongside.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeWave {
    pub edge: usize,
    pub a: f64,
    pub b: f64,
}

impl EdgeWave {
    pub fn value(&self, k: f64, t: f64) -> f64 {
        if k == 0.0 {
            self.a + self.b * t
        } else {
            let (s, c) = (k * t).sin_cos();
            self.a * c + self.b * s
        }
    }

    pub fn derivative(&self, k: f64, t: f64) -> f64 {
        if k == 0.0 {
            self.b
        } else {
            let (s, c) = (k * t).sin_cos();
            k * (self.b * c - self.a * s)
        }
    }

    /// Exact integral over `[0, length]`.
    pub fn integral(&self, k: f64, length: f64) -> f64 {
        if k == 0.0 {
            self.a * length + 0.5 * self.b * length * length
        } else {
            let x = k * length;
            let half = (0.5 * x).sin();
            (self.a * x.sin() + self.b * 2.0 * half * half) / k
        }
    }

    /// Exact `L^2(0, length)` inner product with another wave of the same `k`.
    pub fn inner(&self, other: &EdgeWave, k: f64, length: f64) -> f64 {
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        if k == 0.0 {
            let l = length;
            a * c * l + 0.5 * (a * d + b * c) * l * l + b * d * l * l * l / 3.0
        } else {
            let x = k * length;
            let s2 = (2.0 * x).sin() / (4.0 * k);
            let cc = 0.5 * length + s2;
            let ss = 0.5 * length - s2;
            let sn = x.sin();
            let cs = sn * sn / (2.0 * k);
            a * c * cc + b * d * ss + (a * d + b * c) * cs
        }
    }

    pub fn scaled(&self, factor: f64) -> EdgeWave {
        EdgeWave {
            edge: self.edge,
            a: self.a * factor,
            b: self.b * factor,
        }
    }
}

/// `∫_Γ f` for an edgewise function, summed in edge order.
pub fn integral(g: &MetricGraph, f: &[EdgeWave], k: f64) -> f64 {
    f.iter().map(|w| w.integral(k, g.length(w.edge))).sum()
}

pub fn l2_inner(g: &MetricGraph, f: &[EdgeWave], h: &[EdgeWave], k: f64) -> f64 {
    f.iter()
        .zip(h)
        .map(|(u, v)| u.inner(v, k, g.length(u.edge)))
        .sum()
}

pub fn l2_norm(g: &MetricGraph, f: &[EdgeWave], k: f64) -> f64 {
    l2_inner(g, f, f, k).max(0.0).sqrt()
}

/// `f` evaluated at one end of its edge.
pub(crate) fn end_value(g: &MetricGraph, f: &[EdgeWave], k: f64, edge: usize, end: End) -> f64 {
    match end {
        End::Source => f[edge].value(k, 0.0),
        End::Target => f[edge].value(k, g.length(edge)),
    }
}

/// Derivative of `f` pointing away from the vertex at the given end.
pub(crate) fn outward_derivative(
    g: &MetricGraph,
    f: &[EdgeWave],
    k: f64,
    edge: usize,
    end: End,
) -> f64 {
    match end {
        End::Source => f[edge].derivative(k, 0.0),
        End::Target => -f[edge].derivative(k, g.length(edge)),
    }
}

/// Worst violations of the vertex conditions by an edgewise function.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VertexResiduals {
    /// Largest value mismatch between edge ends meeting at a standard vertex.
    pub continuity: f64,
    /// Largest |sum of outward derivatives| at a standard vertex.
    pub kirchhoff: f64,
    /// Largest |value| at a Dirichlet vertex.
    pub dirichlet: f64,
}

pub fn vertex_residuals(g: &MetricGraph, f: &[EdgeWave], k: f64) -> VertexResiduals {
    let mut r = VertexResiduals::default();
    for v in 0..g.vertex_count() {
        let ends = g.incident(v);
        let values: Vec<f64> = ends
            .iter()
            .map(|e| end_value(g, f, k, e.edge, e.end))
            .collect();
        match g.condition(v) {
            VertexCondition::Standard => {
                for pair in values.windows(2) {
                    r.continuity = r.continuity.max((pair[0] - pair[1]).abs());
                }
                let flux: f64 = ends
                    .iter()
                    .map(|e| outward_derivative(g, f, k, e.edge, e.end))
                    .sum();
                r.kirchhoff = r.kirchhoff.max(flux.abs());
            }
            VertexCondition::Dirichlet => {
                for x in values {
                    r.dirichlet = r.dirichlet.max(x.abs());
                }
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn midpoint_quadrature(f: impl Fn(f64) -> f64, length: f64) -> f64 {
        let n = 200_000;
        let h = length / n as f64;
        (0..n).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() * h
    }

    #[test]
    fn integrals_match_quadrature() {
        for &(a, b, k, l) in &[
            (1.0, 0.0, PI, 1.0),
            (0.3, -1.2, 2.7, 1.9),
            (0.5, 2.0, 0.0, 1.3),
        ] {
            let w = EdgeWave { edge: 0, a, b };
            let q = midpoint_quadrature(|t| w.value(k, t), l);
            assert!((w.integral(k, l) - q).abs() < 1e-9, "{a} {b} {k} {l}");
            let v = EdgeWave {
                edge: 0,
                a: -0.7,
                b: 0.4,
            };
            let q = midpoint_quadrature(|t| w.value(k, t) * v.value(k, t), l);
            assert!((w.inner(&v, k, l) - q).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_integrates_to_length() {
        let g = MetricGraph::new(3, &[(0, 1, 0.4), (1, 2, 1.1)]).unwrap();
        let one: Vec<_> = (0..2)
            .map(|e| EdgeWave {
                edge: e,
                a: 1.0,
                b: 0.0,
            })
            .collect();
        assert!((integral(&g, &one, 0.0) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn neumann_cosine_has_zero_mean() {
        let g = MetricGraph::new(2, &[(0, 1, 1.0)]).unwrap();
        let f = [EdgeWave {
            edge: 0,
            a: 1.0,
            b: 0.0,
        }];
        assert!(integral(&g, &f, PI).abs() < 1e-15);
        let r = vertex_residuals(&g, &f, PI);
        assert!(r.kirchhoff < 1e-14);
    }
}
