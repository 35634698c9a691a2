//! `qgraph`: spectra, extrema and survey reports for metric graphs.
//!
//! Every command prints one JSON document on stdout (or CSV with `--csv`).
//! Exit codes: 0 when everything checked holds, 1 on a property violation,
//! 2 on bad usage or unreadable input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod tables;

#[derive(Debug, Parser)]
#[command(
    name = "qgraph",
    version,
    about = "Laplacian spectra and hot spots on metric graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Format {
    /// Emit JSON (the default).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues up to a bound, optionally with the extrema of one
    /// eigenfunction.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        mu_max: f64,
        /// 1-based eigenvalue index (counted with multiplicity) whose first
        /// basis eigenfunction is analysed.
        #[arg(long)]
        extrema: Option<usize>,
        #[command(flatten)]
        format: Format,
    },
    /// Rebuild the star/path example and check each of its claims.
    Repro {
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
        #[command(flatten)]
        format: Format,
    },
    /// Check the boundary property on seeded random trees.
    Survey {
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = qgraph_core::experiments::DEFAULT_MAX_EDGES)]
        max_edges: usize,
        /// Also run the star/path example with this epsilon as a fixture.
        #[arg(long)]
        with_example: Option<f64>,
        #[command(flatten)]
        format: Format,
    },
    /// Glue a pendant edge at a vertex and compare `mu_2`.
    Monotonicity {
        #[arg(long)]
        graph: PathBuf,
        /// Vertex id as written in the graph file, or a vertex label.
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        length: f64,
        #[command(flatten)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve {
            graph,
            mu_max,
            extrema,
            format,
        } => commands::solve(&graph, mu_max, extrema, format.csv),
        Command::Repro { epsilon, format } => commands::repro(epsilon, format.csv),
        Command::Survey {
            n,
            seed,
            max_edges,
            with_example,
            format,
        } => commands::survey(n, seed, max_edges, with_example, format.csv),
        Command::Monotonicity {
            graph,
            vertex,
            length,
            format,
        } => commands::monotonicity(&graph, &vertex, length, format.csv),
    };
    match outcome {
        Ok(output) => {
            print!("{}", output.text);
            if output.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("qgraph: {e}");
            ExitCode::from(2)
        }
    }
}
