//! Laplacian eigenvalues and eigenfunctions with standard and Dirichlet
//! vertex conditions.
//!
//! The exact backend solves the secular equation `det M(k) = 0`
//! ([`secular`]); the finite element backend ([`fem`]) is an independent
//! discretisation used for cross-validation.

pub mod fem;
pub mod secular;
mod solver;
mod sweep;
mod wave;

pub use fem::{fem_eigenvalues, FemMesh};
pub use secular::{assemble_secular, counting_function, secular_indicator, SecularSystem};
pub use solver::{
    eigenfunctions, find_eigenvalues, first_eigenpair, lowest_eigenpairs, second_eigenpair,
    Eigenpair, SolverOptions,
};
pub use sweep::{eigenvalue_vs_length_sweep, sweep_scales};
pub use wave::{integral, l2_inner, l2_norm, vertex_residuals, EdgeWave, VertexResiduals};
