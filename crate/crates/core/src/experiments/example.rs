//! The star/path tree whose `mu_2` extrema do not realise the diameter.
//!
//! Two unit edges `v_l - v_0 - v_r` form the path `P2`. The graph `S2` joins
//! `v_0` to two star centres `c_u` and `c_d`, each carrying two pendant leaves
//! (`v_u1`, `v_u2` and `v_d1`, `v_d2`); all six edges have length
//! `1/2 - epsilon`. Gluing both at `v_0` gives `Gamma`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{glue_graphs, MetricGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleParams {
    pub epsilon: f64,
}

impl ExampleParams {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && (0.0..0.25).contains(&epsilon)) {
            return Err(Error::Validation(format!(
                "epsilon must lie in [0, 0.25), got {epsilon}"
            )));
        }
        Ok(Self { epsilon })
    }

    /// Length of every star edge.
    pub fn star_edge(&self) -> f64 {
        0.5 - self.epsilon
    }
}

impl Default for ExampleParams {
    fn default() -> Self {
        Self { epsilon: 0.05 }
    }
}

#[derive(Clone, Debug)]
pub struct StarPathExample {
    pub params: ExampleParams,
    pub path: MetricGraph,
    pub star: MetricGraph,
    pub gamma: MetricGraph,
}

impl StarPathExample {
    pub fn new(params: ExampleParams) -> Result<Self> {
        let path = doubled_path()?;
        let star = doubled_star(params.star_edge())?;
        let gamma = glue_graphs(
            &[path.clone(), star.clone()],
            &[label(&path, "v_0")?, label(&star, "v_0")?],
        )?;
        Ok(Self {
            params,
            path,
            star,
            gamma,
        })
    }

    /// Edges of `gamma` that came from the path.
    pub fn path_edges(&self) -> Vec<usize> {
        (0..self.path.edge_count()).collect()
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        label(&self.gamma, name)
    }
}

pub fn build_star_path_example(params: ExampleParams) -> Result<StarPathExample> {
    StarPathExample::new(params)
}

pub(crate) fn label(g: &MetricGraph, name: &str) -> Result<VertexId> {
    g.find_vertex(name)
        .ok_or_else(|| Error::Validation(format!("no vertex labelled {name}")))
}

fn labelled(g: MetricGraph, names: &[&str]) -> Result<MetricGraph> {
    names
        .iter()
        .enumerate()
        .try_fold(g, |g, (v, name)| g.with_label(v, *name))
}

fn doubled_path() -> Result<MetricGraph> {
    labelled(
        MetricGraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)])?,
        &["v_l", "v_0", "v_r"],
    )
}

fn doubled_star(a: f64) -> Result<MetricGraph> {
    let g = MetricGraph::new(
        7,
        &[
            (0, 1, a),
            (1, 3, a),
            (1, 4, a),
            (0, 2, a),
            (2, 5, a),
            (2, 6, a),
        ],
    )?;
    labelled(g, &["v_0", "c_u", "c_d", "v_u1", "v_u2", "v_d1", "v_d2"])
}

/// One copy of the three-edge star with a Dirichlet condition at the leaf
/// that is glued to `v_0`.
pub fn dirichlet_star(params: ExampleParams) -> Result<MetricGraph> {
    let a = params.star_edge();
    let g = MetricGraph::new(4, &[(1, 0, a), (1, 2, a), (1, 3, a)])?;
    labelled(g, &["v_0", "c_u", "v_u1", "v_u2"])?.with_dirichlet(&[0])
}
