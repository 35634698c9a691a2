//! Exact eigenvalues by scanning the secular indicator over a k-grid.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::secular::{assemble_secular, counting_function, secular_indicator};
use super::wave::{l2_inner, EdgeWave};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Tunables of the secular root finder. The defaults are the values every
/// test and report in this crate relies on.
#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// k-grid spacing; `None` means `pi / (10 L_total)`.
    pub scan_step: Option<f64>,
    /// The indicator must fall below this for a minimum to count as a root.
    pub zero_threshold: f64,
    /// Singular values below `multiplicity_ratio * sigma_max` span the kernel.
    pub multiplicity_ratio: f64,
    /// Relative k-tolerance of the golden-section refinement.
    pub k_tolerance: f64,
    /// How many times the grid is refined by 4x before giving up.
    pub max_rescans: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            scan_step: None,
            zero_threshold: 1e-9,
            multiplicity_ratio: 1e-7,
            k_tolerance: 1e-12,
            max_rescans: 3,
        }
    }
}

/// An eigenvalue `mu = k^2` with an L^2-orthonormal basis of its eigenspace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenpair {
    pub mu: f64,
    pub k: f64,
    pub multiplicity: usize,
    pub basis: Vec<Vec<EdgeWave>>,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

fn golden_section(g: &MetricGraph, mut lo: f64, mut hi: f64, rel_tol: f64) -> Result<(f64, f64)> {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = secular_indicator(g, x1)?;
    let mut f2 = secular_indicator(g, x2)?;
    while hi - lo > rel_tol * hi {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = secular_indicator(g, x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = secular_indicator(g, x2)?;
        }
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Number of singular values of `M(k)` below the multiplicity threshold.
fn kernel_dimension(g: &MetricGraph, k: f64, ratio: f64) -> Result<usize> {
    let s = assemble_secular(g, k)?.singular_values();
    let max = s.last().copied().unwrap_or(0.0);
    Ok(s.iter().filter(|&&x| x < ratio * max).count().max(1))
}

/// Roots of the indicator in `(0, k_max]`, with multiplicities.
fn scan_roots(
    g: &MetricGraph,
    k_max: f64,
    step: f64,
    opts: &SolverOptions,
) -> Result<Vec<(f64, usize)>> {
    let n = (k_max / step).ceil() as usize + 2;
    let grid: Vec<f64> = (1..=n).map(|i| i as f64 * step).collect();
    let values = grid
        .iter()
        .map(|&k| secular_indicator(g, k))
        .collect::<Result<Vec<_>>>()?;

    let mut roots: Vec<f64> = Vec::new();
    for i in 0..n {
        let left_ok = i == 0 || values[i] <= values[i - 1];
        let right_ok = i + 1 == n || values[i] <= values[i + 1];
        if !(left_ok && right_ok) {
            continue;
        }
        let lo = if i == 0 { 1e-3 * step } else { grid[i - 1] };
        let hi = if i + 1 == n {
            grid[i] + step
        } else {
            grid[i + 1]
        };
        let (k, sigma) = golden_section(g, lo, hi, opts.k_tolerance)?;
        if sigma < opts.zero_threshold {
            roots.push(k);
        }
    }
    roots.sort_by(f64::total_cmp);

    let merge_gap = 10.0 * opts.k_tolerance;
    let mut merged: Vec<(f64, usize)> = Vec::new();
    let mut i = 0;
    while i < roots.len() {
        let mut j = i + 1;
        while j < roots.len() && roots[j] - roots[j - 1] < merge_gap * roots[j] {
            j += 1;
        }
        let k = 0.5 * (roots[i] + roots[j - 1]);
        merged.push((k, kernel_dimension(g, k, opts.multiplicity_ratio)?));
        i = j;
    }
    Ok(merged)
}

fn zero_is_eigenvalue(g: &MetricGraph) -> bool {
    !g.has_dirichlet()
}

fn constant_eigenpair(g: &MetricGraph) -> Eigenpair {
    let a = 1.0 / g.total_length().sqrt();
    Eigenpair {
        mu: 0.0,
        k: 0.0,
        multiplicity: 1,
        basis: vec![(0..g.edge_count())
            .map(|edge| EdgeWave { edge, a, b: 0.0 })
            .collect()],
    }
}

/// Coarse missed-root alarm: the count may deviate from Weyl's law by at most
/// `|V| + 2`.
fn weyl_consistent(g: &MetricGraph, mu: f64, found: usize) -> bool {
    let weyl = g.total_length() * mu.sqrt() / std::f64::consts::PI;
    (found as f64 - weyl).abs() <= (g.vertex_count() + 2) as f64
}

/// All eigenvalues in `[0, mu_max]` in nondecreasing order, each with an
/// orthonormal eigenbasis.
///
/// Positive eigenvalues are located as zeros of [`secular_indicator`] on a
/// uniform k-grid, refined by golden-section search. The number of roots
/// found is checked against the exact [`counting_function`] and against
/// Weyl's law; on a mismatch the grid is refined by a factor of 4, and after
/// `max_rescans` refinements a [`Error::Resolution`] is returned.
pub fn find_eigenvalues(
    g: &MetricGraph,
    mu_max: f64,
    opts: &SolverOptions,
) -> Result<Vec<Eigenpair>> {
    if !(mu_max.is_finite() && mu_max > 0.0) {
        return Err(Error::Domain(format!(
            "mu_max must be positive, got {mu_max}"
        )));
    }
    g.require_connected()?;

    let limit = mu_max * (1.0 + 1e-9);
    let expected = counting_function(g, limit);
    let zero = usize::from(zero_is_eigenvalue(g));
    let mut step = opts
        .scan_step
        .unwrap_or(std::f64::consts::PI / (10.0 * g.total_length()));

    let mut found = 0;
    for _ in 0..=opts.max_rescans {
        let roots: Vec<(f64, usize)> = scan_roots(g, limit.sqrt(), step, opts)?
            .into_iter()
            .filter(|&(k, _)| k * k <= limit)
            .collect();
        found = zero + roots.iter().map(|r| r.1).sum::<usize>();
        if found == expected && weyl_consistent(g, limit, found) {
            let mut pairs = Vec::with_capacity(roots.len() + zero);
            if zero == 1 {
                pairs.push(constant_eigenpair(g));
            }
            for (k, m) in roots {
                pairs.push(eigenpair_at(g, k, m)?);
            }
            return Ok(pairs);
        }
        step /= 4.0;
    }
    Err(Error::Resolution {
        mu_max,
        found,
        expected,
    })
}

/// The lowest eigenpairs covering at least `count` eigenvalues counted with
/// multiplicity.
pub fn lowest_eigenpairs(
    g: &MetricGraph,
    count: usize,
    opts: &SolverOptions,
) -> Result<Vec<Eigenpair>> {
    g.require_connected()?;
    let pi = std::f64::consts::PI;
    let mut mu_max = (pi * count.max(1) as f64 / g.total_length()).powi(2);
    while counting_function(g, mu_max) < count {
        mu_max *= 2.0;
    }
    let mut pairs = find_eigenvalues(g, mu_max, opts)?;
    let mut covered = 0;
    let keep = pairs
        .iter()
        .take_while(|p| {
            let before = covered;
            covered += p.multiplicity;
            before < count
        })
        .count();
    pairs.truncate(keep);
    Ok(pairs)
}

/// The eigenpair holding the second eigenvalue counted with multiplicity;
/// on a connected graph with standard conditions this is `mu_2`.
pub fn second_eigenpair(g: &MetricGraph, opts: &SolverOptions) -> Result<Eigenpair> {
    let pairs = lowest_eigenpairs(g, 2, opts)?;
    let mut covered = 0;
    for p in pairs {
        covered += p.multiplicity;
        if covered >= 2 {
            return Ok(p);
        }
    }
    unreachable!("lowest_eigenpairs covers two eigenvalues")
}

/// The lowest eigenpair; `lambda_1` when Dirichlet vertices are present.
pub fn first_eigenpair(g: &MetricGraph, opts: &SolverOptions) -> Result<Eigenpair> {
    Ok(lowest_eigenpairs(g, 1, opts)?.remove(0))
}

fn eigenpair_at(g: &MetricGraph, k: f64, multiplicity: usize) -> Result<Eigenpair> {
    let basis = basis_at(g, k, multiplicity)?;
    Ok(Eigenpair {
        mu: k * k,
        k,
        multiplicity: basis.len(),
        basis,
    })
}

fn waves_from(coeffs: &[f64]) -> Vec<EdgeWave> {
    coeffs
        .chunks(2)
        .enumerate()
        .map(|(edge, c)| EdgeWave {
            edge,
            a: c[0],
            b: c[1],
        })
        .collect()
}

/// Orthonormal eigenbasis from the numerical kernel of `M(k)`.
fn basis_at(g: &MetricGraph, k: f64, multiplicity: usize) -> Result<Vec<Vec<EdgeWave>>> {
    let raw: Vec<Vec<EdgeWave>> = assemble_secular(g, k)?
        .null_vectors(multiplicity)
        .iter()
        .map(|v| waves_from(v))
        .collect();
    let m = raw.len();
    let gram = DMatrix::from_fn(m, m, |i, j| l2_inner(g, &raw[i], &raw[j], k));
    let eig = SymmetricEigen::new(gram);
    let mut basis = Vec::with_capacity(m);
    for j in 0..m {
        let scale = 1.0 / eig.eigenvalues[j].sqrt();
        let mut f: Vec<EdgeWave> = raw[0].iter().map(|w| w.scaled(0.0)).collect();
        for (i, r) in raw.iter().enumerate() {
            let c = eig.eigenvectors[(i, j)] * scale;
            for (acc, w) in f.iter_mut().zip(r) {
                acc.a += c * w.a;
                acc.b += c * w.b;
            }
        }
        fix_sign(g, &mut f, k);
        basis.push(f);
    }
    Ok(basis)
}

/// Makes the boundary-vertex value of largest modulus positive (all vertex
/// values when there is no boundary).
fn fix_sign(g: &MetricGraph, f: &mut [EdgeWave], k: f64) {
    let mut vertices = g.boundary_vertices();
    if vertices.is_empty() {
        vertices = (0..g.vertex_count()).collect();
    }
    let mut best = 0.0f64;
    for v in vertices {
        if let Some(end) = g.incident(v).first() {
            let x = super::wave::end_value(g, f, k, end.edge, end.end);
            if x.abs() > best.abs() + 1e-12 {
                best = x;
            }
        }
    }
    if best < 0.0 {
        for w in f.iter_mut() {
            *w = w.scaled(-1.0);
        }
    }
}

/// Orthonormal eigenbasis for the eigenvalue `mu`.
///
/// `mu` is polished by a golden-section search within a relative window of
/// `1e-8` before the indicator is checked against the zero threshold, so a
/// value printed with ~9 significant digits is accepted.
pub fn eigenfunctions(g: &MetricGraph, mu: f64) -> Result<Vec<Vec<EdgeWave>>> {
    g.require_connected()?;
    if mu == 0.0 {
        return if zero_is_eigenvalue(g) {
            Ok(constant_eigenpair(g).basis)
        } else {
            Err(Error::Domain(
                "0 is not an eigenvalue with Dirichlet vertices".into(),
            ))
        };
    }
    if !(mu.is_finite() && mu > 0.0) {
        return Err(Error::Domain(format!("{mu} is not an eigenvalue")));
    }
    let opts = SolverOptions::default();
    let k0 = mu.sqrt();
    let (k, sigma) = golden_section(g, k0 * (1.0 - 1e-8), k0 * (1.0 + 1e-8), opts.k_tolerance)?;
    if sigma >= opts.zero_threshold {
        return Err(Error::Domain(format!(
            "{mu} is not an eigenvalue (indicator {sigma:.3e})"
        )));
    }
    basis_at(g, k, kernel_dimension(g, k, opts.multiplicity_ratio)?)
}
