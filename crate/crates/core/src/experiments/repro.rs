//! Numerical check of every claim made about the star/path example.

use serde::{Deserialize, Serialize};

use super::example::{dirichlet_star, ExampleParams, StarPathExample};
use crate::error::Result;
use crate::graph::MetricGraph;
use crate::hotspots::{
    default_tolerance, edge_extrema, global_extrema, hot_spots_holds, sup_norm, ExtremumReport,
};
use crate::spectral::{first_eigenpair, second_eigenpair, EdgeWave, SolverOptions};

/// `mu_2(Gamma)` must agree with `mu_2(S2)` this closely.
pub const EQUALITY_TOLERANCE: f64 = 1e-8;
/// `lambda_1(S)` must agree with `mu_2(S2)` this closely.
pub const DIRICHLET_TOLERANCE: f64 = 1e-9;
/// Relative bound on `|f|` over the path part of `Gamma`.
pub const PATH_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproChecks {
    /// `mu_2(S2) < mu_2(P2)`.
    pub star_below_path: bool,
    /// `mu_2(Gamma) = mu_2(S2)`.
    pub gamma_matches_star: bool,
    pub gamma_simple: bool,
    /// `lambda_1(S) = mu_2(S2)`.
    pub dirichlet_identity: bool,
    /// The eigenfunction vanishes on the path.
    pub vanishes_on_path: bool,
    /// Maxima exactly at the upper leaves and minima at the lower ones, or
    /// the other way round.
    pub extrema_at_star_leaves: bool,
    /// `extrema_distance < diameter`.
    pub extrema_short_of_diameter: bool,
}

impl ReproChecks {
    pub fn all(&self) -> bool {
        self.star_below_path
            && self.gamma_matches_star
            && self.gamma_simple
            && self.dirichlet_identity
            && self.vanishes_on_path
            && self.extrema_at_star_leaves
            && self.extrema_short_of_diameter
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproReport {
    pub epsilon: f64,
    pub mu2_path: f64,
    pub mu2_star: f64,
    pub mu2_gamma: f64,
    pub multiplicity: usize,
    pub lambda1_dirichlet_star: f64,
    /// `sup |f|` over the path edges divided by `sup |f|` over `Gamma`.
    pub path_sup_ratio: f64,
    pub max_labels: Vec<String>,
    pub min_labels: Vec<String>,
    pub extrema: ExtremumReport,
    pub extrema_distance: f64,
    pub diameter: f64,
    pub hotspots_at_boundary: bool,
    pub checks: ReproChecks,
    pub claims_verified: bool,
}

fn labels_of(g: &MetricGraph, points: &[crate::hotspots::ReportPoint]) -> Vec<String> {
    let mut out: Vec<String> = points
        .iter()
        .map(|p| match p.vertex.and_then(|v| g.label(v)) {
            Some(name) => name.to_string(),
            None => match p.vertex {
                Some(v) => format!("#{v}"),
                None => format!("e{}@{}", p.edge, p.t),
            },
        })
        .collect();
    out.sort();
    out
}

fn path_sup(ex: &StarPathExample, f: &[EdgeWave], k: f64) -> Result<f64> {
    let mut sup = 0.0f64;
    for e in ex.path_edges() {
        for (_, x) in edge_extrema(&f[e], k, ex.gamma.length(e))? {
            sup = sup.max(x.abs());
        }
    }
    Ok(sup)
}

/// Builds the example for `epsilon` and evaluates every claim. A failed claim
/// is reported in `checks`, not raised.
pub fn run_repro(epsilon: f64) -> Result<ReproReport> {
    let params = ExampleParams::new(epsilon)?;
    let ex = StarPathExample::new(params)?;
    let opts = SolverOptions::default();

    let path = second_eigenpair(&ex.path, &opts)?;
    let star = second_eigenpair(&ex.star, &opts)?;
    let gamma = second_eigenpair(&ex.gamma, &opts)?;
    let lambda1 = first_eigenpair(&dirichlet_star(params)?, &opts)?;

    let mut f = gamma.basis[0].clone();
    let mut extrema = global_extrema(&ex.gamma, &f, gamma.k)?;
    let mut max_labels = labels_of(&ex.gamma, &extrema.max_points);
    if max_labels.iter().any(|l| l.starts_with("v_d")) {
        // the basis sign is arbitrary here; report the upper leaves as maxima
        f = f.iter().map(|w| w.scaled(-1.0)).collect();
        extrema = global_extrema(&ex.gamma, &f, gamma.k)?;
        max_labels = labels_of(&ex.gamma, &extrema.max_points);
    }
    let min_labels = labels_of(&ex.gamma, &extrema.min_points);

    let sup = sup_norm(&ex.gamma, &f, gamma.k)?;
    let path_sup_ratio = path_sup(&ex, &f, gamma.k)? / sup;
    let hotspots_at_boundary = hot_spots_holds(&extrema, default_tolerance(&ex.gamma));

    let checks = ReproChecks {
        star_below_path: star.mu < path.mu,
        gamma_matches_star: (gamma.mu - star.mu).abs() < EQUALITY_TOLERANCE,
        gamma_simple: gamma.multiplicity == 1,
        dirichlet_identity: (lambda1.mu - star.mu).abs() < DIRICHLET_TOLERANCE,
        vanishes_on_path: path_sup_ratio < PATH_TOLERANCE,
        extrema_at_star_leaves: max_labels == ["v_u1", "v_u2"] && min_labels == ["v_d1", "v_d2"],
        extrema_short_of_diameter: extrema.extrema_distance < extrema.diameter,
    };
    Ok(ReproReport {
        epsilon,
        mu2_path: path.mu,
        mu2_star: star.mu,
        mu2_gamma: gamma.mu,
        multiplicity: gamma.multiplicity,
        lambda1_dirichlet_star: lambda1.mu,
        path_sup_ratio,
        max_labels,
        min_labels,
        extrema_distance: extrema.extrema_distance,
        diameter: extrema.diameter,
        extrema,
        hotspots_at_boundary,
        claims_verified: checks.all(),
        checks,
    })
}
