//! Piecewise-linear finite elements on a per-edge mesh.
//!
//! Continuity at standard vertices comes from sharing the vertex degree of
//! freedom, Kirchhoff holds weakly, and Dirichlet vertices drop their degree
//! of freedom. Eigenvalues of the pencil `(K, M)` are located by bisection on
//! the inertia of `K - lambda M`: the number of negative pivots equals the
//! number of eigenvalues below `lambda`. Interior nodes of every edge form a
//! chain that is eliminated first; the remaining Schur complement lives on
//! the vertices only.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{MetricGraph, VertexCondition};

#[derive(Clone, Debug)]
pub struct FemMesh<'g> {
    graph: &'g MetricGraph,
    /// Elements per edge.
    elements: Vec<usize>,
}

impl<'g> FemMesh<'g> {
    /// Uniform mesh on every edge with element width at most `h`.
    pub fn new(graph: &'g MetricGraph, h: f64) -> Result<Self> {
        graph.require_connected()?;
        let shortest = graph.shortest_edge().unwrap_or(0.0);
        if !(h > 0.0 && h < shortest) {
            return Err(Error::Domain(format!(
                "mesh width {h} must be positive and below the shortest edge {shortest}"
            )));
        }
        let elements = graph
            .edges()
            .iter()
            .map(|e| (e.length / h).ceil() as usize)
            .collect();
        Ok(Self { graph, elements })
    }

    /// Every element halved.
    pub fn refined(&self) -> Self {
        Self {
            graph: self.graph,
            elements: self.elements.iter().map(|n| 2 * n).collect(),
        }
    }

    pub fn max_width(&self) -> f64 {
        self.graph
            .edges()
            .iter()
            .zip(&self.elements)
            .map(|(e, &n)| e.length / n as f64)
            .fold(0.0, f64::max)
    }

    pub fn dof_count(&self) -> usize {
        let interior: usize = self.elements.iter().map(|n| n - 1).sum();
        let vertices = (0..self.graph.vertex_count())
            .filter(|&v| self.graph.condition(v) == VertexCondition::Standard)
            .count();
        interior + vertices
    }

    /// Number of discrete eigenvalues strictly below `lambda`.
    pub fn count_below(&self, lambda: f64) -> usize {
        let g = self.graph;
        let mut free = vec![None; g.vertex_count()];
        let mut kept = 0;
        for (v, slot) in free.iter_mut().enumerate() {
            if g.condition(v) == VertexCondition::Standard {
                *slot = Some(kept);
                kept += 1;
            }
        }
        let mut acc = Accumulator {
            lambda,
            kept,
            entries: Vec::new(),
            negative: 0,
        };
        for (e, &n) in g.edges().iter().zip(&self.elements) {
            let h = e.length / n as f64;
            acc.chain(h, n, free[e.source], free[e.target]);
        }

        let mut schur = DMatrix::<f64>::zeros(acc.kept, acc.kept);
        for (i, j, x) in acc.entries {
            schur[(i, j)] += x;
        }
        let mut negative = acc.negative;
        if acc.kept > 0 {
            negative += SymmetricEigen::new(schur)
                .eigenvalues
                .iter()
                .filter(|&&x| x < 0.0)
                .count();
        }
        negative
    }

    /// The lowest `count` eigenvalues of the discrete problem, ascending.
    pub fn eigenvalues(&self, count: usize) -> Vec<f64> {
        if count == 0 {
            return Vec::new();
        }
        let mut hi = 1.0;
        while self.count_below(hi) < count {
            hi *= 2.0;
        }
        // bracket of every eigenvalue: the largest lambda with count <= i and
        // the smallest with count > i, refined independently per index
        (0..count)
            .into_par_iter()
            .map(|i| {
                let (mut lo, mut up) = (0.0, hi);
                if self.count_below(0.0) > i {
                    return 0.0;
                }
                loop {
                    let mid = 0.5 * (lo + up);
                    if up - lo <= 1e-15 * up + 1e-13 || mid <= lo || mid >= up {
                        return mid;
                    }
                    if self.count_below(mid) > i {
                        up = mid;
                    } else {
                        lo = mid;
                    }
                }
            })
            .collect()
    }
}

/// Schur complement of `K - lambda M` onto the kept nodes (free vertices plus
/// any interior nodes promoted to avoid near-zero pivots).
struct Accumulator {
    lambda: f64,
    kept: usize,
    entries: Vec<(usize, usize, f64)>,
    negative: usize,
}

impl Accumulator {
    /// Eliminates the interior of a uniform chain of `n` elements of width
    /// `h` between two kept nodes (`None` for a Dirichlet end). When a pivot
    /// nearly vanishes, the chain's middle node is kept instead and both
    /// halves are handled separately.
    fn chain(&mut self, h: f64, n: usize, u: Option<usize>, w: Option<usize>) {
        let end_diag = 1.0 / h - self.lambda * h / 3.0;
        let off = -1.0 / h - self.lambda * h / 6.0;
        if n == 1 {
            self.push(u, u, end_diag);
            self.push(w, w, end_diag);
            self.push(u, w, off);
            self.push(w, u, off);
            return;
        }
        // eliminate interior nodes from the u side, carrying the fill-in
        // coupling to u along the chain
        let guard = 1e-6 * (2.0 / h + self.lambda.abs() * h);
        let mut pivots = Vec::with_capacity(n - 1);
        let mut fill_u = 0.0;
        let mut pivot = 2.0 * end_diag;
        let mut to_u = off;
        for i in 1..n {
            if pivot.abs() < guard {
                let mid = n / 2;
                let m = Some(self.kept);
                self.kept += 1;
                self.chain(h, mid, u, m);
                self.chain(h, n - mid, m, w);
                return;
            }
            pivots.push(pivot);
            fill_u -= to_u * to_u / pivot;
            if i + 1 < n {
                let next = -to_u * off / pivot;
                pivot = 2.0 * end_diag - off * off / pivot;
                to_u = next;
            }
        }
        let last = *pivots.last().expect("n >= 2");
        self.negative += pivots.iter().filter(|&&p| p < 0.0).count();
        self.push(u, u, end_diag + fill_u);
        self.push(w, w, end_diag - off * off / last);
        self.push(u, w, -to_u * off / last);
        self.push(w, u, -to_u * off / last);
    }

    fn push(&mut self, a: Option<usize>, b: Option<usize>, x: f64) {
        if let (Some(i), Some(j)) = (a, b) {
            self.entries.push((i, j, x));
        }
    }
}

/// The first `count` eigenvalues of the finite element discretisation with
/// element width at most `h`.
pub fn fem_eigenvalues(g: &MetricGraph, h: f64, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::Domain("count must be at least 1".into()));
    }
    Ok(FemMesh::new(g, h)?.eigenvalues(count))
}
