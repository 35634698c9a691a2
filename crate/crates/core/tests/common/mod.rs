//! Scalar oracles shared by the integration tests. They use nothing but
//! bisection on closed-form equations, independent of the library solver.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Root of a sign-changing `f` on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    assert!(f_lo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `mu_2` of the doubled star with edge length `a`: the smallest `k^2` with
/// `tan(k a) = 1 / sqrt(2)`.
pub fn star_mu2(a: f64) -> f64 {
    let target = 0.5f64.sqrt();
    let k = bisect(
        |k| (k * a).tan() - target,
        0.0,
        0.5 * PI / a * (1.0 - 1e-12),
    );
    k * k
}

/// The `epsilon` at which the doubled star's `mu_2` reaches `pi^2 / 4`.
pub fn epsilon_star() -> f64 {
    bisect(|eps| star_mu2(0.5 - eps) - PI * PI / 4.0, 0.0, 0.25)
}

/// Least-squares slope of `log y` against `log x`.
pub fn log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

#[test]
fn oracle_values() {
    // closed forms, used only to check the oracles themselves
    let s = (0.5f64.sqrt()).atan();
    assert!((star_mu2(0.5) - (2.0 * s).powi(2)).abs() < 1e-12);
    assert!((epsilon_star() - (0.5 - 2.0 / PI * s)).abs() < 1e-12);
    assert!((epsilon_star() - 0.108173).abs() < 1e-6);
}
