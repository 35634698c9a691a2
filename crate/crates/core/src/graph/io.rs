//! JSON graph files.
//!
//! ```json
//! {"vertices": [{"id": 0, "label": "v_l"}, {"id": 1}],
//!  "edges": [{"source": 0, "target": 1, "length": 1.0}],
//!  "dirichlet": [1]}
//! ```
//!
//! Vertex ids may be any distinct non-negative integers; they are renumbered
//! in listing order on load. Lengths are written in shortest round-trip form
//! and parsed exactly, so a write/read cycle is bit-exact.

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{MetricGraph, VertexCondition};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub source: u64,
    pub target: u64,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub dirichlet: Vec<u64>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<MetricGraph> {
        let mut index = HashMap::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(Error::Validation(format!("duplicate vertex id {}", v.id)));
            }
        }
        let lookup = |id: u64| {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| Error::Validation(format!("edge references unknown vertex {id}")))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Ok((lookup(e.source)?, lookup(e.target)?, e.length)))
            .collect::<Result<Vec<_>>>()?;
        let mut g = MetricGraph::new(self.vertices.len(), &edges)?;
        for (i, v) in self.vertices.into_iter().enumerate() {
            if let Some(label) = v.label {
                g = g.with_label(i, label)?;
            }
        }
        for id in self.dirichlet {
            g = g.with_condition(lookup(id)?, VertexCondition::Dirichlet)?;
        }
        Ok(g)
    }
}

impl From<&MetricGraph> for GraphFile {
    fn from(g: &MetricGraph) -> Self {
        GraphFile {
            vertices: (0..g.vertex_count())
                .map(|v| VertexRecord {
                    id: v as u64,
                    label: g.label(v).map(str::to_owned),
                })
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    source: e.source as u64,
                    target: e.target as u64,
                    length: e.length,
                })
                .collect(),
            dirichlet: g
                .dirichlet_vertices()
                .into_iter()
                .map(|v| v as u64)
                .collect(),
        }
    }
}

impl MetricGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from(self)).expect("graph file serialises")
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}
