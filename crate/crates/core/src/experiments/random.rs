use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Default edge-length range of random trees.
pub const DEFAULT_LENGTHS: (f64, f64) = (0.2, 2.0);

/// Uniform-attachment random tree driven by ChaCha8 seeded with `seed`.
///
/// Vertex `i + 1` is joined to a parent drawn uniformly from `0..=i`; the
/// edge length is then drawn uniformly from `[lo, hi]`. Both draws for edge
/// `i` happen before any draw for edge `i + 1`.
pub fn random_tree(seed: u64, n_edges: usize, (lo, hi): (f64, f64)) -> Result<MetricGraph> {
    if n_edges == 0 {
        return Err(Error::Validation(
            "a random tree needs at least one edge".into(),
        ));
    }
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo <= hi) {
        return Err(Error::Validation(format!(
            "length range [{lo}, {hi}] must satisfy 0 < lo <= hi"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n_edges);
    for i in 0..n_edges {
        let parent = rng.gen_range(0..=i);
        let length = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
        edges.push((parent, i + 1, length));
    }
    MetricGraph::new(n_edges + 1, &edges)
}
