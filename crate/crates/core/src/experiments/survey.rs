//! Random-tree survey of the boundary property of `mu_2` eigenfunctions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::random::{random_tree, DEFAULT_LENGTHS};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::hotspots::{default_tolerance, global_extrema, hot_spots_holds};
use crate::spectral::{integral, second_eigenpair, EdgeWave, Eigenpair, SolverOptions};

/// Default cap on edges per random tree.
pub const DEFAULT_MAX_EDGES: usize = 12;
/// Random combinations tested inside every multiple eigenspace.
pub const COMBINATIONS: usize = 32;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyOptions {
    pub n: usize,
    pub seed: u64,
    pub max_edges: usize,
    pub lengths: (f64, f64),
    pub combinations: usize,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        Self {
            n: 200,
            seed: 7,
            max_edges: DEFAULT_MAX_EDGES,
            lengths: DEFAULT_LENGTHS,
            combinations: COMBINATIONS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub trial: usize,
    /// Seed of the tree; absent for injected fixtures.
    pub seed: Option<u64>,
    /// Name of an injected fixture.
    pub fixture: Option<String>,
    pub vertices: usize,
    pub edges: usize,
    pub total_length: f64,
    pub mu2: f64,
    pub multiplicity: usize,
    /// Worst margin over every tested eigenfunction.
    pub boundary_margin: f64,
    pub hot_spots: bool,
    /// Largest `|integral f|` over the basis.
    pub max_abs_integral: f64,
    /// Eigenfunctions checked: the basis plus random combinations.
    pub functions_checked: usize,
    /// Extrema geometry of the first basis function.
    pub extrema_distance: f64,
    pub diameter: f64,
    pub ratio: f64,
    /// The default scan failed and the trial was solved on a finer grid.
    pub rescanned: bool,
    pub error: Option<String>,
}

impl SurveyRecord {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.hot_spots
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveySummary {
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
    pub min_ratio: f64,
    pub median_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub options: SurveyOptions,
    pub records: Vec<SurveyRecord>,
    pub summary: SurveySummary,
    pub all_passed: bool,
}

fn solve(g: &MetricGraph) -> Result<(Eigenpair, bool)> {
    match second_eigenpair(g, &SolverOptions::default()) {
        Err(Error::Resolution { .. }) => {
            let finer = SolverOptions {
                scan_step: Some(std::f64::consts::PI / (40.0 * g.total_length())),
                max_rescans: 5,
                ..SolverOptions::default()
            };
            Ok((second_eigenpair(g, &finer)?, true))
        }
        other => Ok((other?, false)),
    }
}

/// Random unit-norm combination of an orthonormal basis.
fn combination(basis: &[Vec<EdgeWave>], rng: &mut ChaCha8Rng) -> Vec<EdgeWave> {
    let mut c: Vec<f64> = basis.iter().map(|_| rng.gen_range(-1.0..=1.0)).collect();
    let norm = c
        .iter()
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(f64::MIN_POSITIVE);
    c.iter_mut().for_each(|x| *x /= norm);
    let mut f: Vec<EdgeWave> = basis[0].iter().map(|w| w.scaled(0.0)).collect();
    for (ci, b) in c.iter().zip(basis) {
        for (acc, w) in f.iter_mut().zip(b) {
            acc.a += ci * w.a;
            acc.b += ci * w.b;
        }
    }
    f
}

/// Solves `mu_2` on a tree and checks every basis eigenfunction, plus random
/// combinations when the eigenvalue is multiple.
pub fn survey_tree(
    g: &MetricGraph,
    trial: usize,
    seed: Option<u64>,
    fixture: Option<String>,
    combinations: usize,
) -> SurveyRecord {
    let mut record = SurveyRecord {
        trial,
        seed,
        fixture,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        total_length: g.total_length(),
        mu2: f64::NAN,
        multiplicity: 0,
        boundary_margin: f64::NAN,
        hot_spots: false,
        max_abs_integral: f64::NAN,
        functions_checked: 0,
        extrema_distance: f64::NAN,
        diameter: f64::NAN,
        ratio: f64::NAN,
        rescanned: false,
        error: None,
    };
    if let Err(e) = check_tree(g, &mut record, combinations) {
        record.error = Some(e.to_string());
        record.hot_spots = false;
    }
    record
}

fn check_tree(g: &MetricGraph, record: &mut SurveyRecord, combinations: usize) -> Result<()> {
    let (pair, rescanned) = solve(g)?;
    record.rescanned = rescanned;
    record.mu2 = pair.mu;
    record.multiplicity = pair.multiplicity;

    let mut functions = pair.basis.clone();
    if pair.multiplicity > 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(record.seed.unwrap_or(0) ^ 0x5eed);
        for _ in 0..combinations {
            functions.push(combination(&pair.basis, &mut rng));
        }
    }
    let tol = default_tolerance(g);
    let mut margin = 0.0f64;
    let mut holds = true;
    for (i, f) in functions.iter().enumerate() {
        let report = global_extrema(g, f, pair.k)?;
        margin = margin.max(report.boundary_margin);
        holds &= hot_spots_holds(&report, tol);
        if i == 0 {
            record.extrema_distance = report.extrema_distance;
            record.diameter = report.diameter;
            record.ratio = report.extrema_distance / report.diameter;
        }
    }
    record.max_abs_integral = pair
        .basis
        .iter()
        .map(|f| integral(g, f, pair.k).abs())
        .fold(0.0, f64::max);
    record.boundary_margin = margin;
    record.hot_spots = holds;
    record.functions_checked = functions.len();
    Ok(())
}

fn summarise(records: &[SurveyRecord]) -> SurveySummary {
    let mut ratios: Vec<f64> = records
        .iter()
        .filter(|r| r.error.is_none())
        .map(|r| r.ratio)
        .collect();
    ratios.sort_by(f64::total_cmp);
    let median = match ratios.len() {
        0 => f64::NAN,
        n if n % 2 == 1 => ratios[n / 2],
        n => 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]),
    };
    let errored = records.iter().filter(|r| r.error.is_some()).count();
    let passed = records.iter().filter(|r| r.passed()).count();
    SurveySummary {
        trials: records.len(),
        passed,
        failed: records.len() - passed - errored,
        errored,
        min_ratio: ratios.first().copied().unwrap_or(f64::NAN),
        median_ratio: median,
    }
}

/// Runs `opts.n` random trials followed by the named `fixtures`.
///
/// Tree seeds and sizes are drawn sequentially from a ChaCha8 stream seeded
/// with `opts.seed`, so the records do not depend on how the trials are
/// scheduled across threads.
pub fn run_survey(
    opts: &SurveyOptions,
    fixtures: &[(String, MetricGraph)],
) -> Result<SurveyReport> {
    if opts.n == 0 && fixtures.is_empty() {
        return Err(Error::Validation("survey needs at least one trial".into()));
    }
    if opts.max_edges == 0 {
        return Err(Error::Validation("max_edges must be at least 1".into()));
    }
    let mut master = ChaCha8Rng::seed_from_u64(opts.seed);
    let plan: Vec<(u64, usize)> = (0..opts.n)
        .map(|_| (master.gen(), master.gen_range(1..=opts.max_edges)))
        .collect();
    let trees = plan
        .iter()
        .map(|&(seed, n_edges)| random_tree(seed, n_edges, opts.lengths))
        .collect::<Result<Vec<_>>>()?;

    let mut records: Vec<SurveyRecord> = trees
        .par_iter()
        .zip(&plan)
        .enumerate()
        .map(|(trial, (g, &(seed, _)))| survey_tree(g, trial, Some(seed), None, opts.combinations))
        .collect();
    for (i, (name, g)) in fixtures.iter().enumerate() {
        records.push(survey_tree(
            g,
            opts.n + i,
            None,
            Some(name.clone()),
            opts.combinations,
        ));
    }
    let summary = summarise(&records);
    Ok(SurveyReport {
        options: opts.clone(),
        all_passed: summary.passed == summary.trials,
        records,
        summary,
    })
}
