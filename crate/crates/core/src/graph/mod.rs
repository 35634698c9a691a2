//! Metric graphs: combinatorial graphs whose edges are intervals of given
//! positive length.

mod io;
mod metric;
mod surgery;

pub use io::{EdgeRecord, GraphFile, VertexRecord};
pub use metric::{diameter, distance, distances_from, Diameter};
pub use surgery::{glue_graphs, is_isomorphic_tree, split_at_vertex, SplitComponent};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexCondition {
    /// Continuity plus vanishing sum of outward derivatives.
    #[default]
    Standard,
    Dirichlet,
}

/// An edge parametrised by arclength `t in [0, length]`, with `t = 0` at
/// `source`. The orientation only fixes the parametrisation.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub source: VertexId,
    pub target: VertexId,
    pub length: f64,
}

/// Which end of an edge touches a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Source,
    Target,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: End,
}

/// A finite metric graph with a vertex condition attached to every vertex.
///
/// Immutable once built; all modifications return a new graph.
#[derive(Clone, Debug)]
pub struct MetricGraph {
    labels: Vec<Option<String>>,
    edges: Vec<Edge>,
    conditions: Vec<VertexCondition>,
    incidence: Vec<Vec<EdgeEnd>>,
}

/// Builds a validated graph from an edge list. `conditions` overrides the
/// default standard condition for the listed vertices.
pub fn build_graph(
    vertex_count: usize,
    edge_list: &[(VertexId, VertexId, f64)],
    conditions: &[(VertexId, VertexCondition)],
) -> Result<MetricGraph> {
    let mut g = MetricGraph::new(vertex_count, edge_list)?;
    for &(v, c) in conditions {
        g = g.with_condition(v, c)?;
    }
    Ok(g)
}

impl MetricGraph {
    pub fn new(vertex_count: usize, edge_list: &[(VertexId, VertexId, f64)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::Validation("graph needs at least one vertex".into()));
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        for (i, &(u, v, length)) in edge_list.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Validation(format!(
                    "edge {i} ({u}, {v}) references a vertex outside 0..{vertex_count}"
                )));
            }
            if !(length.is_finite() && length > 0.0) {
                return Err(Error::Validation(format!(
                    "edge {i} has invalid length {length}; lengths must be positive and finite"
                )));
            }
            edges.push(Edge {
                source: u,
                target: v,
                length,
            });
        }
        Ok(Self::from_parts(
            vec![None; vertex_count],
            edges,
            vec![VertexCondition::Standard; vertex_count],
        ))
    }

    fn from_parts(
        labels: Vec<Option<String>>,
        edges: Vec<Edge>,
        conditions: Vec<VertexCondition>,
    ) -> Self {
        let mut incidence = vec![Vec::new(); labels.len()];
        for (id, e) in edges.iter().enumerate() {
            incidence[e.source].push(EdgeEnd {
                edge: id,
                end: End::Source,
            });
            incidence[e.target].push(EdgeEnd {
                edge: id,
                end: End::Target,
            });
        }
        Self {
            labels,
            edges,
            conditions,
            incidence,
        }
    }

    pub fn with_condition(mut self, v: VertexId, condition: VertexCondition) -> Result<Self> {
        self.check_vertex(v)?;
        self.conditions[v] = condition;
        Ok(self)
    }

    pub fn with_dirichlet(self, vertices: &[VertexId]) -> Result<Self> {
        vertices.iter().try_fold(self, |g, &v| {
            g.with_condition(v, VertexCondition::Dirichlet)
        })
    }

    pub fn with_label(mut self, v: VertexId, label: impl Into<String>) -> Result<Self> {
        self.check_vertex(v)?;
        self.labels[v] = Some(label.into());
        Ok(self)
    }

    /// Same combinatorics and conditions, new edge lengths.
    pub fn with_lengths(&self, lengths: &[f64]) -> Result<Self> {
        if lengths.len() != self.edges.len() {
            return Err(Error::Validation(format!(
                "expected {} lengths, got {}",
                self.edges.len(),
                lengths.len()
            )));
        }
        let list: Vec<_> = self
            .edges
            .iter()
            .zip(lengths)
            .map(|(e, &l)| (e.source, e.target, l))
            .collect();
        let fresh = MetricGraph::new(self.vertex_count(), &list)?;
        Ok(Self::from_parts(
            self.labels.clone(),
            fresh.edges,
            self.conditions.clone(),
        ))
    }

    /// Every edge length multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let lengths: Vec<f64> = self.edges.iter().map(|e| e.length * factor).collect();
        self.with_lengths(&lengths)
    }

    /// Appends a new degree-one vertex joined to `v` by an edge of the given
    /// length. Returns the graph and the id of the new vertex.
    pub fn with_pendant(&self, v: VertexId, length: f64) -> Result<(Self, VertexId)> {
        self.check_vertex(v)?;
        let leaf = self.vertex_count();
        let mut list: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.source, e.target, e.length))
            .collect();
        list.push((v, leaf, length));
        let fresh = MetricGraph::new(leaf + 1, &list)?;
        let mut labels = self.labels.clone();
        labels.push(None);
        let mut conditions = self.conditions.clone();
        conditions.push(VertexCondition::Standard);
        Ok((Self::from_parts(labels, fresh.edges, conditions), leaf))
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "unknown vertex {v} (graph has {} vertices)",
                self.vertex_count()
            )))
        }
    }

    pub(crate) fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edge_count() {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "unknown edge {e} (graph has {} edges)",
                self.edge_count()
            )))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn length(&self, e: EdgeId) -> f64 {
        self.edges[e].length
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.length).collect()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels[v].as_deref()
    }

    pub fn find_vertex(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    pub fn condition(&self, v: VertexId) -> VertexCondition {
        self.conditions[v]
    }

    pub fn has_dirichlet(&self) -> bool {
        self.conditions.contains(&VertexCondition::Dirichlet)
    }

    pub fn dirichlet_vertices(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| self.conditions[v] == VertexCondition::Dirichlet)
            .collect()
    }

    /// Edge ends incident to `v`; a self-loop contributes two entries.
    pub fn incident(&self, v: VertexId) -> &[EdgeEnd] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    /// The vertex at the given end of an edge.
    pub fn endpoint(&self, end: EdgeEnd) -> VertexId {
        let e = &self.edges[end.edge];
        match end.end {
            End::Source => e.source,
            End::Target => e.target,
        }
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn shortest_edge(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.length).reduce(f64::min)
    }

    /// Degree-one vertices, in increasing id order.
    pub fn boundary_vertices(&self) -> Vec<VertexId> {
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == 1)
            .collect()
    }

    /// Neighbours of `v` together with the connecting edge.
    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.incidence[v].iter().map(move |end| {
            let e = &self.edges[end.edge];
            let other = match end.end {
                End::Source => e.target,
                End::Target => e.source,
            };
            (other, end.edge)
        })
    }

    /// Connected component index for every vertex, numbered in order of
    /// first appearance.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(v) = stack.pop() {
                for (w, _) in self.neighbours(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    pub fn is_tree(&self) -> bool {
        self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.edge_count() == 0 {
            return Err(Error::Validation("graph has no edges".into()));
        }
        if !self.is_connected() {
            return Err(Error::Validation("graph is not connected".into()));
        }
        Ok(())
    }

    /// A point at arclength `t` along `edge`.
    pub fn point(&self, edge: EdgeId, t: f64) -> Result<GraphPoint> {
        self.check_edge(edge)?;
        let len = self.length(edge);
        if !(t.is_finite() && (0.0..=len).contains(&t)) {
            return Err(Error::Validation(format!(
                "t = {t} outside [0, {len}] on edge {edge}"
            )));
        }
        Ok(GraphPoint { edge, t })
    }

    /// The vertex `v` expressed as an endpoint of its first incident edge.
    pub fn vertex_point(&self, v: VertexId) -> Result<GraphPoint> {
        self.check_vertex(v)?;
        let end = self.incidence[v]
            .first()
            .ok_or_else(|| Error::Validation(format!("vertex {v} is isolated")))?;
        Ok(match end.end {
            End::Source => GraphPoint {
                edge: end.edge,
                t: 0.0,
            },
            End::Target => GraphPoint {
                edge: end.edge,
                t: self.length(end.edge),
            },
        })
    }

    /// Canonical form of a point: endpoints of an edge collapse to vertices.
    pub fn locate(&self, p: GraphPoint) -> Location {
        let e = &self.edges[p.edge];
        if p.t <= 0.0 {
            Location::Vertex(e.source)
        } else if p.t >= e.length {
            Location::Vertex(e.target)
        } else {
            Location::Interior {
                edge: p.edge,
                t: p.t,
            }
        }
    }

    /// Rebuilds the graph keeping only the given edges, with vertices
    /// renumbered in order of first appearance. Returns the subgraph and the
    /// old-to-new vertex map.
    pub(crate) fn subgraph(&self, edges: &[EdgeId]) -> (Self, Vec<Option<VertexId>>) {
        let mut map = vec![None; self.vertex_count()];
        let mut labels = Vec::new();
        let mut conditions = Vec::new();
        let mut touch = |v: VertexId, map: &mut Vec<Option<VertexId>>| -> VertexId {
            *map[v].get_or_insert_with(|| {
                labels.push(self.labels[v].clone());
                conditions.push(self.conditions[v]);
                labels.len() - 1
            })
        };
        let mut list = Vec::with_capacity(edges.len());
        for &e in edges {
            let edge = &self.edges[e];
            let s = touch(edge.source, &mut map);
            let t = touch(edge.target, &mut map);
            list.push(Edge {
                source: s,
                target: t,
                length: edge.length,
            });
        }
        (Self::from_parts(labels, list, conditions), map)
    }
}

/// A location on the metric graph: arclength `t` along `edge`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphPoint {
    pub edge: EdgeId,
    pub t: f64,
}

/// Canonicalised [`GraphPoint`]. Two points denote the same location iff
/// their `Location`s are equal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Location {
    Vertex(VertexId),
    Interior { edge: EdgeId, t: f64 },
}

impl Location {
    pub fn vertex(&self) -> Option<VertexId> {
        match *self {
            Location::Vertex(v) => Some(v),
            Location::Interior { .. } => None,
        }
    }
}
