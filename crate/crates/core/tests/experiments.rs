mod common;

use common::{epsilon_star, star_mu2};
use qgraph_core::experiments::{
    build_star_path_example, dirichlet_star, pendant_experiment, random_tree, run_repro,
    run_survey, truncation_experiment, ExampleParams, SurveyOptions,
};
use qgraph_core::graph::{glue_graphs, split_at_vertex};
use qgraph_core::spectral::{first_eigenpair, second_eigenpair, SolverOptions};

#[test]
fn repro_holds_below_the_threshold() {
    let top = epsilon_star();
    for eps in [0.01, 0.03, 0.05, 0.07, 0.09, 0.1] {
        assert!(eps < top);
        let r = run_repro(eps).unwrap();
        assert!(r.claims_verified, "eps {eps}: {:?}", r.checks);
        assert!((r.mu2_gamma - r.mu2_path.min(r.mu2_star)).abs() < 1e-8);
        assert!((r.mu2_star - star_mu2(0.5 - eps)).abs() < 1e-9);
        assert!((r.extrema_distance - 4.0 * (0.5 - eps)).abs() < 1e-8);
    }
}

#[test]
fn repro_above_the_threshold_fails_ordering() {
    for eps in [0.12, 0.2] {
        let r = run_repro(eps).unwrap();
        assert!(!r.checks.star_below_path);
        assert!(!r.claims_verified);
    }
}

#[test]
fn symmetric_example_is_reported() {
    let r = run_repro(0.0).unwrap();
    assert!((r.mu2_star - star_mu2(0.5)).abs() < 1e-9);
    assert!(r.mu2_star < r.mu2_path);
}

#[test]
fn dirichlet_identity_across_epsilon() {
    let opts = SolverOptions::default();
    for eps in [0.0, 0.05, 0.1] {
        let p = ExampleParams::new(eps).unwrap();
        let lambda1 = first_eigenpair(&dirichlet_star(p).unwrap(), &opts)
            .unwrap()
            .mu;
        let star = build_star_path_example(p).unwrap().star;
        let mu2 = second_eigenpair(&star, &opts).unwrap().mu;
        assert!((lambda1 - mu2).abs() < 1e-9);
    }
}

#[test]
fn splitting_gamma_at_the_centre() {
    // the eigenfunction lives on the star half; that half alone keeps mu_2
    let ex = build_star_path_example(ExampleParams::default()).unwrap();
    let opts = SolverOptions::default();
    let mu = second_eigenpair(&ex.gamma, &opts).unwrap().mu;
    let v0 = ex.vertex("v_0").unwrap();
    let parts = split_at_vertex(&ex.gamma, v0).unwrap();
    assert_eq!(parts.len(), 4);
    // regroup the two star edges at v_0 into one component
    let star_parts: Vec<_> = parts.iter().filter(|p| p.graph.edge_count() == 3).collect();
    assert_eq!(star_parts.len(), 2);
    let half = glue_graphs(
        &[star_parts[0].graph.clone(), star_parts[1].graph.clone()],
        &[star_parts[0].attach, star_parts[1].attach],
    )
    .unwrap();
    assert!((second_eigenpair(&half, &opts).unwrap().mu - mu).abs() < 1e-9);
}

#[test]
fn pendant_at_the_zero_set() {
    let ex = build_star_path_example(ExampleParams::default()).unwrap();
    let v0 = ex.vertex("v_0").unwrap();
    let r = pendant_experiment(&ex.gamma, v0, 0.1).unwrap();
    assert!(r.relative_value < 1e-8);
    assert!(!r.expected_strict);
    assert!(r.decrease.abs() < 1e-6, "{r:?}");
    assert!(r.consistent);
}

#[test]
fn vanishing_pendant_vanishing_change() {
    let g = random_tree(9, 6, (0.2, 2.0)).unwrap();
    let changes: Vec<f64> = [1e-1, 1e-2, 1e-3]
        .iter()
        .map(|&l| pendant_experiment(&g, 0, l).unwrap().decrease.abs())
        .collect();
    assert!(changes[2] < changes[1] && changes[1] < changes[0]);
    assert!(changes[2] < 1e-2);
}

#[test]
fn truncation_strictly_raises_lambda1() {
    let s = dirichlet_star(ExampleParams::new(0.1).unwrap()).unwrap();
    for edge in 0..3 {
        let r = truncation_experiment(&s, edge, 0.8).unwrap();
        assert!(r.strict_increase, "{r:?}");
    }
}

#[test]
fn survey_with_the_example_fixture() {
    let ex = build_star_path_example(ExampleParams::default()).unwrap();
    let opts = SurveyOptions {
        n: 30,
        seed: 7,
        ..SurveyOptions::default()
    };
    let r = run_survey(&opts, &[("gamma".into(), ex.gamma)]).unwrap();
    assert_eq!(r.records.len(), 31);
    assert!(r.all_passed);
    for rec in &r.records {
        assert!(rec.extrema_distance <= rec.diameter + 1e-12);
        assert!((0.0..=1.0 + 1e-12).contains(&rec.ratio));
    }
    let fixture = r.records.last().unwrap();
    assert_eq!(fixture.fixture.as_deref(), Some("gamma"));
    assert!((fixture.ratio - 0.9).abs() < 1e-8);
    assert!((r.summary.min_ratio - 0.9).abs() < 1e-8);
}

#[test]
fn survey_is_reproducible() {
    let opts = SurveyOptions {
        n: 20,
        seed: 99,
        ..SurveyOptions::default()
    };
    let a = serde_json::to_string(&run_survey(&opts, &[]).unwrap()).unwrap();
    let b = serde_json::to_string(&run_survey(&opts, &[]).unwrap()).unwrap();
    assert_eq!(a, b);
}
