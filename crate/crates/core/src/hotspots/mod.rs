//! Extrema of eigenfunctions, the boundary check for trees and nodal domains.

mod extrema;
mod nodal;

pub use extrema::{
    default_tolerance, edge_extrema, global_extrema, hot_spots_holds, sup_norm, ExtremumReport,
    ReportPoint, TIE_TOLERANCE,
};
pub use nodal::{nodal_domains, NodalReport, ZERO_EDGE_TOLERANCE};
