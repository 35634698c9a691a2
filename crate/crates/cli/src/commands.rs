use std::path::Path;

use serde::Serialize;

use qgraph_core::experiments::{
    build_star_path_example, pendant_experiment, run_repro, run_survey, ExampleParams,
    SurveyOptions,
};
use qgraph_core::graph::GraphFile;
use qgraph_core::hotspots::{global_extrema, ExtremumReport};
use qgraph_core::spectral::{find_eigenvalues, Eigenpair, SolverOptions};
use qgraph_core::{Error, MetricGraph, Result, VertexId};

use crate::tables;

pub struct Output {
    pub text: String,
    pub passed: bool,
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialises") + "\n"
}

/// Reads a graph file and keeps the file's vertex ids for later lookups.
fn load(path: &Path) -> Result<(MetricGraph, Vec<u64>)> {
    let text = std::fs::read_to_string(path)?;
    let file: GraphFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let ids = file.vertices.iter().map(|v| v.id).collect();
    Ok((file.into_graph()?, ids))
}

fn resolve_vertex(g: &MetricGraph, ids: &[u64], name: &str) -> Result<VertexId> {
    if let Ok(id) = name.parse::<u64>() {
        if let Some(v) = ids.iter().position(|&x| x == id) {
            return Ok(v);
        }
    }
    g.find_vertex(name)
        .ok_or_else(|| Error::Validation(format!("no vertex with id or label {name}")))
}

#[derive(Serialize)]
struct GraphSummary {
    vertices: usize,
    edges: usize,
    total_length: f64,
    dirichlet: Vec<VertexId>,
}

impl GraphSummary {
    fn of(g: &MetricGraph) -> Self {
        GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            total_length: g.total_length(),
            dirichlet: g.dirichlet_vertices(),
        }
    }
}

#[derive(Serialize)]
pub struct SpectrumEntry {
    pub mu: f64,
    pub k: f64,
    pub multiplicity: usize,
    /// 1-based index of the first copy of this eigenvalue.
    pub first_index: usize,
}

#[derive(Serialize)]
pub struct ExtremaSection {
    pub index: usize,
    pub eigenpair: Eigenpair,
    pub labels: Vec<Option<String>>,
    pub report: ExtremumReport,
}

#[derive(Serialize)]
struct SolveReport {
    graph: GraphSummary,
    mu_max: f64,
    spectrum: Vec<SpectrumEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extrema: Option<ExtremaSection>,
}

pub fn solve(path: &Path, mu_max: f64, extrema: Option<usize>, csv: bool) -> Result<Output> {
    let (g, _) = load(path)?;
    let pairs = find_eigenvalues(&g, mu_max, &SolverOptions::default())?;
    let mut spectrum = Vec::with_capacity(pairs.len());
    let mut next = 1;
    for p in &pairs {
        spectrum.push(SpectrumEntry {
            mu: p.mu,
            k: p.k,
            multiplicity: p.multiplicity,
            first_index: next,
        });
        next += p.multiplicity;
    }

    let extrema = match extrema {
        None => None,
        Some(index) => {
            let pos = spectrum
                .iter()
                .position(|s| index >= s.first_index && index < s.first_index + s.multiplicity)
                .ok_or_else(|| {
                    Error::Validation(format!(
                        "eigenvalue {index} lies above mu_max {mu_max} ({} found)",
                        next - 1
                    ))
                })?;
            let pair = pairs[pos].clone();
            let report = global_extrema(&g, &pair.basis[0], pair.k)?;
            let labels = report
                .max_points
                .iter()
                .chain(&report.min_points)
                .map(|p| p.vertex.and_then(|v| g.label(v)).map(str::to_owned))
                .collect();
            Some(ExtremaSection {
                index,
                eigenpair: pair,
                labels,
                report,
            })
        }
    };

    let text = if csv {
        tables::solve(&g, &spectrum, extrema.as_ref())?
    } else {
        json(&SolveReport {
            graph: GraphSummary::of(&g),
            mu_max,
            spectrum,
            extrema,
        })
    };
    Ok(Output { text, passed: true })
}

pub fn repro(epsilon: f64, csv: bool) -> Result<Output> {
    let report = run_repro(epsilon)?;
    let text = if csv {
        tables::repro(&report)?
    } else {
        json(&report)
    };
    Ok(Output {
        text,
        passed: report.claims_verified,
    })
}

pub fn survey(
    n: usize,
    seed: u64,
    max_edges: usize,
    with_example: Option<f64>,
    csv: bool,
) -> Result<Output> {
    let opts = SurveyOptions {
        n,
        seed,
        max_edges,
        ..SurveyOptions::default()
    };
    let mut fixtures = Vec::new();
    if let Some(epsilon) = with_example {
        let ex = build_star_path_example(ExampleParams::new(epsilon)?)?;
        fixtures.push((format!("gamma({epsilon})"), ex.gamma));
    }
    let report = run_survey(&opts, &fixtures)?;
    let text = if csv {
        tables::survey(&report)?
    } else {
        json(&report)
    };
    Ok(Output {
        text,
        passed: report.all_passed,
    })
}

#[derive(Serialize)]
struct MonotonicityOutput {
    graph: GraphSummary,
    #[serde(flatten)]
    report: qgraph_core::experiments::PendantReport,
}

pub fn monotonicity(path: &Path, vertex: &str, length: f64, csv: bool) -> Result<Output> {
    let (g, ids) = load(path)?;
    let v = resolve_vertex(&g, &ids, vertex)?;
    let report = pendant_experiment(&g, v, length)?;
    let passed = report.consistent;
    let text = if csv {
        tables::monotonicity(&report)?
    } else {
        json(&MonotonicityOutput {
            graph: GraphSummary::of(&g),
            report,
        })
    };
    Ok(Output { text, passed })
}
