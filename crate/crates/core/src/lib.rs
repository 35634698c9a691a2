//! Spectral analysis of the Laplacian on compact metric graphs.
//!
//! The crate is organised in four layers:
//!
//! * [`graph`]: the metric graph model, surgery (splitting and gluing at a
//!   vertex) and the intrinsic path metric.
//! * [`spectral`]: eigenvalues and eigenfunctions for standard
//!   (continuity + Kirchhoff) and Dirichlet vertex conditions, computed by an
//!   exact secular-matrix solver and cross-checked by a finite-element backend.
//! * [`hotspots`]: closed-form location of eigenfunction extrema, the
//!   boundary ("hot spots") check for trees and nodal domain counting.
//! * [`experiments`]: the star/path counterexample, random tree surveys and
//!   monotonicity experiments driven by the `qgraph` CLI.

pub mod error;
pub mod experiments;
pub mod graph;
pub mod hotspots;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{EdgeId, GraphPoint, MetricGraph, VertexCondition, VertexId};
pub use spectral::{EdgeWave, Eigenpair};
