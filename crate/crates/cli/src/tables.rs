//! CSV renderings of the command reports.

use qgraph_core::experiments::{PendantReport, ReproReport, SurveyReport};
use qgraph_core::{Error, MetricGraph, Result};

use crate::commands::{ExtremaSection, SpectrumEntry};

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.into())
}

fn num(x: f64) -> String {
    if x.is_nan() {
        String::new()
    } else {
        format!("{x}")
    }
}

/// One row per eigenvalue, then one per extremum point.
pub fn solve(
    g: &MetricGraph,
    spectrum: &[SpectrumEntry],
    extrema: Option<&ExtremaSection>,
) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "kind",
        "index",
        "mu",
        "k",
        "multiplicity",
        "edge",
        "t",
        "vertex",
        "label",
        "value",
    ])
    .map_err(csv_err)?;
    for s in spectrum {
        w.write_record([
            "eigenvalue".to_string(),
            s.first_index.to_string(),
            num(s.mu),
            num(s.k),
            s.multiplicity.to_string(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
        ])
        .map_err(csv_err)?;
    }
    if let Some(x) = extrema {
        let r = &x.report;
        for (kind, points, value) in [
            ("max", &r.max_points, r.max_value),
            ("min", &r.min_points, r.min_value),
        ] {
            for p in points {
                w.write_record([
                    kind.to_string(),
                    x.index.to_string(),
                    num(x.eigenpair.mu),
                    num(x.eigenpair.k),
                    x.eigenpair.multiplicity.to_string(),
                    p.edge.to_string(),
                    num(p.t),
                    p.vertex.map(|v| v.to_string()).unwrap_or_default(),
                    p.vertex
                        .and_then(|v| g.label(v))
                        .unwrap_or_default()
                        .to_string(),
                    num(value),
                ])
                .map_err(csv_err)?;
            }
        }
    }
    finish(w)
}

/// `key,value` pairs.
pub fn repro(r: &ReproReport) -> Result<String> {
    let c = &r.checks;
    let rows = [
        ("epsilon", num(r.epsilon)),
        ("mu2_path", num(r.mu2_path)),
        ("mu2_star", num(r.mu2_star)),
        ("mu2_gamma", num(r.mu2_gamma)),
        ("multiplicity", r.multiplicity.to_string()),
        ("lambda1_dirichlet_star", num(r.lambda1_dirichlet_star)),
        ("path_sup_ratio", num(r.path_sup_ratio)),
        ("max_labels", r.max_labels.join(" ")),
        ("min_labels", r.min_labels.join(" ")),
        ("extrema_distance", num(r.extrema_distance)),
        ("diameter", num(r.diameter)),
        ("hotspots_at_boundary", r.hotspots_at_boundary.to_string()),
        ("star_below_path", c.star_below_path.to_string()),
        ("gamma_matches_star", c.gamma_matches_star.to_string()),
        ("gamma_simple", c.gamma_simple.to_string()),
        ("dirichlet_identity", c.dirichlet_identity.to_string()),
        ("vanishes_on_path", c.vanishes_on_path.to_string()),
        (
            "extrema_at_star_leaves",
            c.extrema_at_star_leaves.to_string(),
        ),
        (
            "extrema_short_of_diameter",
            c.extrema_short_of_diameter.to_string(),
        ),
        ("claims_verified", r.claims_verified.to_string()),
    ];
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["key", "value"]).map_err(csv_err)?;
    for (k, v) in rows {
        w.write_record([k, v.as_str()]).map_err(csv_err)?;
    }
    finish(w)
}

/// One row per trial followed by a `summary` row.
pub fn survey(r: &SurveyReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "trial",
        "seed",
        "fixture",
        "vertices",
        "edges",
        "total_length",
        "mu2",
        "multiplicity",
        "boundary_margin",
        "hot_spots",
        "max_abs_integral",
        "extrema_distance",
        "diameter",
        "ratio",
        "rescanned",
        "error",
    ])
    .map_err(csv_err)?;
    for rec in &r.records {
        w.write_record([
            rec.trial.to_string(),
            rec.seed.map(|s| s.to_string()).unwrap_or_default(),
            rec.fixture.clone().unwrap_or_default(),
            rec.vertices.to_string(),
            rec.edges.to_string(),
            num(rec.total_length),
            num(rec.mu2),
            rec.multiplicity.to_string(),
            num(rec.boundary_margin),
            rec.hot_spots.to_string(),
            num(rec.max_abs_integral),
            num(rec.extrema_distance),
            num(rec.diameter),
            num(rec.ratio),
            rec.rescanned.to_string(),
            rec.error.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    let s = &r.summary;
    let mut summary = vec![String::new(); 16];
    summary[0] = "summary".into();
    summary[2] = format!("passed {}/{} errored {}", s.passed, s.trials, s.errored);
    summary[9] = r.all_passed.to_string();
    summary[13] = format!("min {} median {}", num(s.min_ratio), num(s.median_ratio));
    w.write_record(&summary).map_err(csv_err)?;
    finish(w)
}

pub fn monotonicity(r: &PendantReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(r).map_err(csv_err)?;
    finish(w)
}
