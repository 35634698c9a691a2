//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! are always visible in `cargo test` output.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{epsilon_star, log_slope, star_mu2};
use qgraph_core::experiments::{
    build_star_path_example, dirichlet_star, pendant_experiment, random_tree, run_repro,
    run_survey, truncation_experiment, vertex_value, ExampleParams, SurveyOptions, DEFAULT_LENGTHS,
};
use qgraph_core::hotspots::global_extrema;
use qgraph_core::spectral::{
    find_eigenvalues, first_eigenpair, second_eigenpair, FemMesh, SolverOptions,
};
use qgraph_core::MetricGraph;

type Check = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn within(started: Instant, limit: Duration) -> std::result::Result<(), String> {
    let took = started.elapsed();
    ensure(took < limit, format!("took {took:?}, limit {limit:?}"))
}

fn interval_sanity() -> Check {
    let started = Instant::now();
    let g = MetricGraph::new(2, &[(0, 1, 1.0)]).unwrap();
    let expect = [0.0, PI * PI, 4.0 * PI * PI];
    let pairs = find_eigenvalues(&g, 4.0 * PI * PI, &SolverOptions::default())
        .map_err(|e| e.to_string())?;
    let exact: Vec<f64> = pairs.iter().map(|p| p.mu).collect();
    ensure(exact.len() == 3, format!("exact spectrum {exact:?}"))?;
    ensure(exact[0] == 0.0, "mu_1 is not 0")?;
    for i in 1..3 {
        ensure(
            rel(exact[i], expect[i]) < 1e-10,
            format!("exact {} vs {}", exact[i], expect[i]),
        )?;
    }
    let fem = FemMesh::new(&g, 1e-3).unwrap().eigenvalues(3);
    ensure(fem[0].abs() < 1e-8, format!("fem mu_1 {}", fem[0]))?;
    for i in 1..3 {
        ensure(
            rel(fem[i], expect[i]) < 1e-4,
            format!("fem {} vs {}", fem[i], expect[i]),
        )?;
    }
    within(started, Duration::from_secs(1))?;
    Ok(format!("exact {exact:?}, fem {fem:?}"))
}

fn path_value() -> Check {
    let ex = build_star_path_example(ExampleParams::default()).unwrap();
    let p = second_eigenpair(&ex.path, &SolverOptions::default()).map_err(|e| e.to_string())?;
    ensure(
        rel(p.mu, PI * PI / 4.0) < 1e-10,
        format!("mu_2(P2) = {}", p.mu),
    )?;
    let r = global_extrema(&ex.path, &p.basis[0], p.k).map_err(|e| e.to_string())?;
    let mut at: Vec<&str> = r
        .max_points
        .iter()
        .chain(&r.min_points)
        .filter_map(|q| q.vertex.and_then(|v| ex.path.label(v)))
        .collect();
    at.sort();
    ensure(at == ["v_l", "v_r"], format!("extrema at {at:?}"))?;
    ensure(
        (r.extrema_distance - 2.0).abs() < 1e-12 && (r.diameter - 2.0).abs() < 1e-12,
        format!("distance {} diameter {}", r.extrema_distance, r.diameter),
    )?;
    Ok(format!("mu_2 = {}", p.mu))
}

fn derived_values() -> Check {
    let started = Instant::now();
    let oracle_mu = star_mu2(0.5);
    let oracle_eps = epsilon_star();
    let opts = SolverOptions::default();
    let s2 = build_star_path_example(ExampleParams::new(0.0).unwrap())
        .unwrap()
        .star;
    let exact = second_eigenpair(&s2, &opts).map_err(|e| e.to_string())?.mu;
    ensure(
        (exact - oracle_mu).abs() < 1e-9,
        format!("mu_2(S2) {exact} vs oracle {oracle_mu}"),
    )?;
    let fem = FemMesh::new(&s2, 1e-3).unwrap().eigenvalues(2)[1];
    ensure(
        rel(fem, oracle_mu) < 1e-4,
        format!("fem {fem} vs oracle {oracle_mu}"),
    )?;

    let at = |eps: f64| {
        let star = build_star_path_example(ExampleParams::new(eps).unwrap())
            .unwrap()
            .star;
        second_eigenpair(&star, &opts).map(|p| p.mu - PI * PI / 4.0)
    };
    // the crossing of mu_2(S2) with pi^2/4, located with the exact backend
    let (mut lo, mut hi) = (0.0, 0.2);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if at(mid).map_err(|e| e.to_string())? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let eps = 0.5 * (lo + hi);
    ensure(
        (eps - oracle_eps).abs() < 1e-9,
        format!("epsilon* {eps} vs oracle {oracle_eps}"),
    )?;
    let star = build_star_path_example(ExampleParams::new(oracle_eps).unwrap())
        .unwrap()
        .star;
    let fem_star = FemMesh::new(&star, 1e-3).unwrap().eigenvalues(2)[1];
    ensure(
        rel(fem_star, PI * PI / 4.0) < 1e-4,
        format!("fem at epsilon* {fem_star}"),
    )?;
    within(started, Duration::from_secs(5))?;
    Ok(format!("mu_2(S2) = {exact}, epsilon* = {eps}"))
}

fn reproduction() -> Check {
    let started = Instant::now();
    let r = run_repro(0.05).map_err(|e| e.to_string())?;
    ensure(r.multiplicity == 1, "mu_2(Gamma) is not simple")?;
    ensure(
        (r.mu2_gamma - r.mu2_star).abs() < 1e-8,
        format!("{} vs {}", r.mu2_gamma, r.mu2_star),
    )?;
    ensure(
        r.path_sup_ratio < 1e-8,
        format!("path sup ratio {}", r.path_sup_ratio),
    )?;
    ensure(
        r.max_labels == ["v_u1", "v_u2"] && r.min_labels == ["v_d1", "v_d2"],
        format!("max {:?} min {:?}", r.max_labels, r.min_labels),
    )?;
    ensure(
        (r.extrema_distance - 1.8).abs() < 1e-8,
        format!("extrema distance {}", r.extrema_distance),
    )?;
    ensure(
        r.extrema_distance < r.diameter && r.diameter == 2.0,
        format!("diameter {}", r.diameter),
    )?;
    within(started, Duration::from_secs(10))?;
    Ok(format!(
        "mu_2 = {}, extrema distance {} < diameter {}",
        r.mu2_gamma, r.extrema_distance, r.diameter
    ))
}

fn survey_suite() -> (Check, Check) {
    let started = Instant::now();
    let opts = SurveyOptions::default();
    let report = match run_survey(&opts, &[]) {
        Ok(r) => r,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    let elapsed = started.elapsed();
    let s = &report.summary;
    let multiple = report.records.iter().filter(|r| r.multiplicity > 1).count();
    let hot = (|| {
        ensure(s.trials == 200, format!("{} trials", s.trials))?;
        ensure(
            report.all_passed,
            format!("{} failed, {} errored", s.failed, s.errored),
        )?;
        within(started, Duration::from_secs(60))?;
        Ok(format!(
            "200/200 trees pass ({multiple} with multiple mu_2), {elapsed:?}"
        ))
    })();
    let worst = report
        .records
        .iter()
        .map(|r| r.max_abs_integral)
        .fold(0.0, f64::max);
    let integral = ensure(worst < 1e-8, format!("|integral f| up to {worst}"))
        .map(|_| format!("max |integral f| = {worst:e}"));
    (hot, integral)
}

fn cross_validation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut orders = Vec::new();
    let mut compared = 0;
    for _ in 0..20 {
        let g = random_tree(rng.gen(), rng.gen_range(1..=6), (0.2, 1.0)).unwrap();
        let pairs =
            find_eigenvalues(&g, 50.0, &SolverOptions::default()).map_err(|e| e.to_string())?;
        let exact: Vec<f64> = pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.mu, p.multiplicity))
            .collect();
        let coarse = FemMesh::new(&g, 4e-3).unwrap();
        let meshes = [coarse.clone(), coarse.refined(), coarse.refined().refined()];
        let widths: Vec<f64> = meshes.iter().map(|m| m.max_width()).collect();
        let fem: Vec<Vec<f64>> = meshes.iter().map(|m| m.eigenvalues(exact.len())).collect();
        for (i, &mu) in exact.iter().enumerate().skip(1) {
            let errors: Vec<f64> = fem.iter().map(|f| (f[i] - mu).abs()).collect();
            let order = log_slope(&widths, &errors);
            ensure(
                order >= 1.9,
                format!("order {order} at mu = {mu}, errors {errors:?}"),
            )?;
            orders.push(order);
            compared += 1;
        }
    }
    let min = orders.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(format!(
        "{compared} eigenvalues on 20 trees, min order {min:.4}"
    ))
}

fn monotonicity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let opts = SolverOptions::default();
    let mut instances = 0;
    let mut smallest = f64::INFINITY;
    while instances < 20 {
        let g = random_tree(rng.gen(), rng.gen_range(1..=10), DEFAULT_LENGTHS).unwrap();
        let pair = second_eigenpair(&g, &opts).map_err(|e| e.to_string())?;
        if pair.multiplicity > 1 {
            continue;
        }
        let f = &pair.basis[0];
        let values: Vec<f64> = (0..g.vertex_count())
            .map(|v| vertex_value(&g, f, pair.k, v).unwrap().abs())
            .collect();
        let v = (0..values.len())
            .max_by(|&a, &b| values[a].total_cmp(&values[b]))
            .unwrap();
        let length = rng.gen_range(DEFAULT_LENGTHS.0..=DEFAULT_LENGTHS.1);
        let r = pendant_experiment(&g, v, length).map_err(|e| e.to_string())?;
        ensure(r.expected_strict && r.decrease > 1e-6, format!("{r:?}"))?;
        smallest = smallest.min(r.decrease);
        instances += 1;
    }
    let s = dirichlet_star(ExampleParams::default()).unwrap();
    for edge in 0..s.edge_count() {
        for keep in [0.25, 0.5, 0.9, 0.99] {
            let t = truncation_experiment(&s, edge, keep).map_err(|e| e.to_string())?;
            ensure(t.strict_increase, format!("{t:?}"))?;
        }
    }
    Ok(format!(
        "20 pendant instances, smallest decrease {smallest:.3e}; 12 truncations increase"
    ))
}

fn dirichlet_identity() -> Check {
    let opts = SolverOptions::default();
    let mut gaps = Vec::new();
    for eps in [0.0, 0.05, 0.1] {
        let params = ExampleParams::new(eps).unwrap();
        let star = build_star_path_example(params).unwrap().star;
        let mu2 = second_eigenpair(&star, &opts)
            .map_err(|e| e.to_string())?
            .mu;
        let lambda1 = first_eigenpair(&dirichlet_star(params).unwrap(), &opts)
            .map_err(|e| e.to_string())?
            .mu;
        ensure(
            (lambda1 - mu2).abs() < 1e-9,
            format!("eps {eps}: {lambda1} vs {mu2}"),
        )?;
        gaps.push((lambda1 - mu2).abs());
    }
    Ok(format!("gaps {gaps:?}"))
}

fn main() {
    let (hot, integral) = survey_suite();
    let results = [
        ("1 interval sanity", interval_sanity()),
        ("2 path mu_2 = pi^2/4", path_value()),
        ("3 derived star values", derived_values()),
        ("4 example reproduction", reproduction()),
        ("5 hot spots on random trees", hot),
        ("6 zero mean eigenfunctions", integral),
        ("7 exact vs finite elements", cross_validation()),
        ("8 monotonicity", monotonicity()),
        ("9 Dirichlet identity", dirichlet_identity()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why})");
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
