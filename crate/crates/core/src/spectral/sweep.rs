use super::solver::{second_eigenpair, SolverOptions};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, MetricGraph};

/// `mu_2` after multiplying the lengths of `edges` by each of `scales`.
/// Output is sorted by scale.
pub fn sweep_scales(
    g: &MetricGraph,
    edges: &[EdgeId],
    scales: &[f64],
    opts: &SolverOptions,
) -> Result<Vec<(f64, f64)>> {
    for &e in edges {
        g.check_edge(e)?;
    }
    let mut scales = scales.to_vec();
    if let Some(bad) = scales.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
        return Err(Error::Domain(format!("scale {bad} must be positive")));
    }
    scales.sort_by(f64::total_cmp);
    scales
        .into_iter()
        .map(|s| {
            let mut lengths = g.lengths();
            for &e in edges {
                lengths[e] *= s;
            }
            let mu = second_eigenpair(&g.with_lengths(&lengths)?, opts)?.mu;
            Ok((s, mu))
        })
        .collect()
}

/// `samples` equally spaced scales from `range.0` to `range.1` inclusive.
pub fn eigenvalue_vs_length_sweep(
    g: &MetricGraph,
    edges: &[EdgeId],
    range: (f64, f64),
    samples: usize,
    opts: &SolverOptions,
) -> Result<Vec<(f64, f64)>> {
    let (lo, hi) = range;
    let scales: Vec<f64> = match samples {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    };
    sweep_scales(g, edges, &scales, opts)
}
