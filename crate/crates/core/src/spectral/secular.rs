//! The secular system: vertex conditions as linear equations on the edge
//! coefficients `(a_e, b_e)` of `a cos(k t) + b sin(k t)`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::{End, MetricGraph, VertexCondition};

/// `M(k)`: a `2|E| x 2|E|` matrix whose kernel is the eigenspace of `k^2`.
///
/// Column `2e` holds `a_e`, column `2e + 1` holds `b_e`. Rows are grouped by
/// vertex in id order: a standard vertex of degree `d` contributes `d - 1`
/// continuity rows followed by one Kirchhoff row, a Dirichlet vertex `d`
/// value rows. Every row is scaled to unit Euclidean norm; `row_scale` keeps
/// the factors that were divided out.
#[derive(Clone, Debug)]
pub struct SecularSystem {
    pub k: f64,
    pub matrix: DMatrix<f64>,
    pub row_scale: Vec<f64>,
}

/// Coefficients of the value of edge `e` at one end, as `(coef_a, coef_b)`.
fn value_row(g: &MetricGraph, k: f64, edge: usize, end: End) -> (f64, f64) {
    match end {
        End::Source => (1.0, 0.0),
        End::Target => {
            let (s, c) = (k * g.length(edge)).sin_cos();
            (c, s)
        }
    }
}

/// Coefficients of `(outward derivative) / k` at one end.
fn flux_row(g: &MetricGraph, k: f64, edge: usize, end: End) -> (f64, f64) {
    match end {
        End::Source => (0.0, 1.0),
        End::Target => {
            let (s, c) = (k * g.length(edge)).sin_cos();
            (s, -c)
        }
    }
}

pub fn assemble_secular(g: &MetricGraph, k: f64) -> Result<SecularSystem> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::Domain(format!(
            "secular system needs k > 0, got {k}"
        )));
    }
    let n = 2 * g.edge_count();
    let mut matrix = DMatrix::zeros(n, n);
    let mut row = 0;
    let mut put = |row: usize, edge: usize, (ca, cb): (f64, f64), sign: f64| {
        matrix[(row, 2 * edge)] += sign * ca;
        matrix[(row, 2 * edge + 1)] += sign * cb;
    };
    for v in 0..g.vertex_count() {
        let ends = g.incident(v);
        match g.condition(v) {
            VertexCondition::Standard => {
                for pair in ends.windows(2) {
                    put(
                        row,
                        pair[0].edge,
                        value_row(g, k, pair[0].edge, pair[0].end),
                        1.0,
                    );
                    put(
                        row,
                        pair[1].edge,
                        value_row(g, k, pair[1].edge, pair[1].end),
                        -1.0,
                    );
                    row += 1;
                }
                if !ends.is_empty() {
                    for e in ends {
                        put(row, e.edge, flux_row(g, k, e.edge, e.end), 1.0);
                    }
                    row += 1;
                }
            }
            VertexCondition::Dirichlet => {
                for e in ends {
                    put(row, e.edge, value_row(g, k, e.edge, e.end), 1.0);
                    row += 1;
                }
            }
        }
    }
    debug_assert_eq!(row, n);

    let mut row_scale = Vec::with_capacity(n);
    for i in 0..n {
        let norm = matrix.row(i).norm();
        // a self-loop Kirchhoff row can cancel exactly; leave it as is
        let scale = if norm > 0.0 { norm } else { 1.0 };
        matrix.row_mut(i).unscale_mut(scale);
        row_scale.push(scale);
    }
    Ok(SecularSystem {
        k,
        matrix,
        row_scale,
    })
}

impl SecularSystem {
    /// Singular values in ascending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self
            .matrix
            .clone()
            .singular_values()
            .iter()
            .copied()
            .collect();
        s.sort_by(f64::total_cmp);
        s
    }

    /// Right singular vectors for the `count` smallest singular values,
    /// smallest first.
    pub fn null_vectors(&self, count: usize) -> Vec<Vec<f64>> {
        let svd = self.matrix.clone().svd(false, true);
        let v_t = svd.v_t.expect("v_t requested");
        let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
        order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
        order
            .into_iter()
            .take(count)
            .map(|i| v_t.row(i).iter().copied().collect())
            .collect()
    }
}

/// Smallest singular value of the row-normalised secular matrix; zero
/// exactly when `k^2` is an eigenvalue.
pub fn secular_indicator(g: &MetricGraph, k: f64) -> Result<f64> {
    let system = assemble_secular(g, k)?;
    if system.matrix.nrows() == 0 {
        return Ok(f64::INFINITY);
    }
    Ok(system.singular_values()[0])
}

/// Exact number of eigenvalues strictly below `mu`, counted with
/// multiplicity.
///
/// Splits the quadratic form into functions vanishing at all vertices (the
/// Dirichlet spectra of the single edges) and `mu`-harmonic extensions of
/// vertex values, whose form is the Dirichlet-to-Neumann matrix. The count is
/// the sum of the edgewise Dirichlet counts and the number of negative
/// eigenvalues of that matrix.
pub fn counting_function(g: &MetricGraph, mu: f64) -> usize {
    if mu <= 0.0 || g.edge_count() == 0 {
        return 0;
    }
    let k = mu.sqrt();
    let mut free: Vec<Option<usize>> = Vec::with_capacity(g.vertex_count());
    let mut kept = 0;
    for v in 0..g.vertex_count() {
        if g.condition(v) == VertexCondition::Standard && g.degree(v) > 0 {
            free.push(Some(kept));
            kept += 1;
        } else {
            free.push(None);
        }
    }

    // (u, w, length) pieces; an edge close to one of its own Dirichlet
    // eigenvalues gets an extra degree-two vertex where k t = pi / 2
    let mut pieces = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let x = k * e.length;
        if x > 1.0 && x.sin().abs() < 1e-3 {
            let m = Some(kept);
            kept += 1;
            let cut = std::f64::consts::FRAC_PI_2 / k;
            pieces.push((free[e.source], m, cut));
            pieces.push((m, free[e.target], e.length - cut));
        } else {
            pieces.push((free[e.source], free[e.target], e.length));
        }
    }

    let mut dtn = DMatrix::<f64>::zeros(kept, kept);
    let mut count = 0;
    for (u, w, length) in pieces {
        let x = k * length;
        // Dirichlet eigenvalues (n pi / L)^2 < mu
        count += (x / std::f64::consts::PI).ceil() as usize - 1;
        let (s, c) = x.sin_cos();
        let diag = k * c / s;
        let off = -k / s;
        if let Some(i) = u {
            dtn[(i, i)] += diag;
        }
        if let Some(j) = w {
            dtn[(j, j)] += diag;
        }
        if let (Some(i), Some(j)) = (u, w) {
            dtn[(i, j)] += off;
            dtn[(j, i)] += off;
        }
    }
    if kept > 0 {
        count += SymmetricEigen::new(dtn)
            .eigenvalues
            .iter()
            .filter(|&&l| l < 0.0)
            .count();
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn interval() -> MetricGraph {
        MetricGraph::new(2, &[(0, 1, 1.0)]).unwrap()
    }

    #[test]
    fn square_and_normalised() {
        let g = MetricGraph::new(4, &[(0, 1, 0.3), (1, 2, 0.8), (1, 3, 1.7)])
            .unwrap()
            .with_dirichlet(&[3])
            .unwrap();
        let s = assemble_secular(&g, 2.3).unwrap();
        assert_eq!(s.matrix.nrows(), 6);
        assert_eq!(s.matrix.ncols(), 6);
        for i in 0..6 {
            assert!((s.matrix.row(i).norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_nonpositive_k() {
        assert!(matches!(
            assemble_secular(&interval(), 0.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            assemble_secular(&interval(), -1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn neumann_interval_indicator() {
        let g = interval();
        assert!(secular_indicator(&g, PI).unwrap() < 1e-12);
        assert!(secular_indicator(&g, 2.0 * PI).unwrap() < 1e-12);
        assert!(secular_indicator(&g, PI / 2.0).unwrap() > 0.1);
    }

    #[test]
    fn dirichlet_interval_indicator() {
        let g = interval().with_dirichlet(&[0, 1]).unwrap();
        assert!(secular_indicator(&g, PI).unwrap() < 1e-12);
        assert!(secular_indicator(&g, 3.0 * PI).unwrap() < 1e-12);
        assert!(secular_indicator(&g, 1.5 * PI).unwrap() > 0.1);
    }

    #[test]
    fn counting_on_intervals() {
        let g = interval();
        // eigenvalues 0, pi^2, 4 pi^2, ...
        assert_eq!(counting_function(&g, 0.5), 1);
        assert_eq!(counting_function(&g, PI * PI * 0.99), 1);
        assert_eq!(counting_function(&g, PI * PI * 1.01), 2);
        assert_eq!(counting_function(&g, 50.0), 3);
        let d = interval().with_dirichlet(&[0, 1]).unwrap();
        assert_eq!(counting_function(&d, 5.0), 0);
        assert_eq!(counting_function(&d, 10.0), 1);
        // mixed: eigenvalues ((n + 1/2) pi)^2
        let m = interval().with_dirichlet(&[0]).unwrap();
        assert_eq!(counting_function(&m, 2.0), 0);
        assert_eq!(counting_function(&m, 2.6), 1);
        assert_eq!(counting_function(&m, 22.0), 1);
        assert_eq!(counting_function(&m, 23.0), 2);
    }

    #[test]
    fn counting_next_to_edge_resonances() {
        // 4 pi^2 is both an eigenvalue and an edgewise Dirichlet eigenvalue
        let g = interval();
        let mu = 4.0 * PI * PI;
        assert_eq!(counting_function(&g, mu * (1.0 - 1e-9)), 2);
        assert_eq!(counting_function(&g, mu * (1.0 + 1e-9)), 3);
        assert_eq!(counting_function(&g, mu * (1.0 + 1e-13)), 3);
    }

    #[test]
    fn counting_on_equilateral_star() {
        // edges of length 1/2: eigenvalue pi^2 has multiplicity 2
        let g = MetricGraph::new(4, &[(0, 1, 0.5), (0, 2, 0.5), (0, 3, 0.5)]).unwrap();
        assert_eq!(counting_function(&g, PI * PI * 0.999), 1);
        assert_eq!(counting_function(&g, PI * PI * 1.001), 3);
    }
}
