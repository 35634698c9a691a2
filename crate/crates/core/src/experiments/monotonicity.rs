//! Eigenvalue response to pendant gluing and to Dirichlet truncation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, End, MetricGraph, VertexCondition, VertexId};
use crate::hotspots::sup_norm;
use crate::spectral::{first_eigenpair, second_eigenpair, EdgeWave, SolverOptions};

/// A change in an eigenvalue counts as strict when it exceeds this.
pub const STRICT_MARGIN: f64 = 1e-6;
/// `|f(v)|` below this fraction of `sup |f|` counts as zero.
pub const VANISHING_VALUE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PendantReport {
    pub vertex: VertexId,
    pub pendant_length: f64,
    pub mu2_before: f64,
    pub multiplicity_before: usize,
    pub mu2_after: f64,
    /// `f(v)` for the first basis eigenfunction before gluing, normalised in
    /// L^2.
    pub eigenfunction_value: f64,
    /// `|f(v)| / sup |f|`, maximised over the eigenbasis.
    pub relative_value: f64,
    pub decrease: f64,
    pub strict_decrease: bool,
    /// A strict decrease is predicted: simple `mu_2` with `f(v) != 0`.
    pub expected_strict: bool,
    /// `mu_2` did not increase, and decreased strictly when predicted.
    pub consistent: bool,
}

/// Value of `f` at vertex `v`, read off its first incident edge.
pub fn vertex_value(g: &MetricGraph, f: &[EdgeWave], k: f64, v: VertexId) -> Result<f64> {
    g.check_vertex(v)?;
    let end = g
        .incident(v)
        .first()
        .ok_or_else(|| Error::Validation(format!("vertex {v} has no edges")))?;
    let t = match end.end {
        End::Source => 0.0,
        End::Target => g.length(end.edge),
    };
    Ok(f[end.edge].value(k, t))
}

/// Glues a pendant edge of length `length` at `v` and compares `mu_2`.
pub fn pendant_experiment(g: &MetricGraph, v: VertexId, length: f64) -> Result<PendantReport> {
    let opts = SolverOptions::default();
    let (glued, _) = g.with_pendant(v, length)?;
    let before = second_eigenpair(g, &opts)?;
    let after = second_eigenpair(&glued, &opts)?;

    let mut relative = 0.0f64;
    for f in &before.basis {
        let sup = sup_norm(g, f, before.k)?;
        relative = relative.max(vertex_value(g, f, before.k, v)?.abs() / sup);
    }
    let decrease = before.mu - after.mu;
    let strict_decrease = decrease > STRICT_MARGIN;
    let expected_strict = before.multiplicity == 1 && relative > VANISHING_VALUE;
    Ok(PendantReport {
        vertex: v,
        pendant_length: length,
        mu2_before: before.mu,
        multiplicity_before: before.multiplicity,
        mu2_after: after.mu,
        eigenfunction_value: vertex_value(g, &before.basis[0], before.k, v)?,
        relative_value: relative,
        decrease,
        strict_decrease,
        expected_strict,
        consistent: decrease > -STRICT_MARGIN && (strict_decrease || !expected_strict),
    })
}

/// Cuts a pendant edge so that `keep` of its length stays attached to the
/// inner vertex, with a Dirichlet condition at the cut. This is the
/// restriction of the graph to a proper subset with Dirichlet conditions on
/// the new boundary.
pub fn dirichlet_truncation(g: &MetricGraph, edge: EdgeId, keep: f64) -> Result<MetricGraph> {
    g.check_edge(edge)?;
    if !(keep > 0.0 && keep < 1.0) {
        return Err(Error::Validation(format!(
            "kept fraction {keep} must lie in (0, 1)"
        )));
    }
    let e = g.edge(edge);
    let leaf = if g.degree(e.target) == 1 {
        e.target
    } else if g.degree(e.source) == 1 {
        e.source
    } else {
        return Err(Error::Validation(format!(
            "edge {edge} is not a pendant edge"
        )));
    };
    let mut lengths = g.lengths();
    lengths[edge] *= keep;
    g.with_lengths(&lengths)?
        .with_condition(leaf, VertexCondition::Dirichlet)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TruncationReport {
    pub edge: EdgeId,
    pub keep: f64,
    pub lambda1_before: f64,
    pub lambda1_after: f64,
    pub increase: f64,
    pub strict_increase: bool,
}

/// Compares the lowest eigenvalue before and after [`dirichlet_truncation`].
pub fn truncation_experiment(g: &MetricGraph, edge: EdgeId, keep: f64) -> Result<TruncationReport> {
    let opts = SolverOptions::default();
    let cut = dirichlet_truncation(g, edge, keep)?;
    let before = first_eigenpair(g, &opts)?.mu;
    let after = first_eigenpair(&cut, &opts)?.mu;
    Ok(TruncationReport {
        edge,
        keep,
        lambda1_before: before,
        lambda1_after: after,
        increase: after - before,
        strict_increase: after - before > STRICT_MARGIN,
    })
}
