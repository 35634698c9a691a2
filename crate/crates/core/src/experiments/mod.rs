//! Experiment drivers behind the `qgraph` command line.

mod example;
mod monotonicity;
mod random;
mod repro;
mod survey;

pub use example::{build_star_path_example, dirichlet_star, ExampleParams, StarPathExample};
pub use monotonicity::{
    dirichlet_truncation, pendant_experiment, truncation_experiment, vertex_value, PendantReport,
    TruncationReport, STRICT_MARGIN, VANISHING_VALUE,
};
pub use random::{random_tree, DEFAULT_LENGTHS};
pub use repro::{
    run_repro, ReproChecks, ReproReport, DIRICHLET_TOLERANCE, EQUALITY_TOLERANCE, PATH_TOLERANCE,
};
pub use survey::{
    run_survey, survey_tree, SurveyOptions, SurveyRecord, SurveyReport, SurveySummary,
    COMBINATIONS, DEFAULT_MAX_EDGES,
};
