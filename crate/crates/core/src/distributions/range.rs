//! Studentized range distribution with infinite degrees of freedom.
//!
//! The CDF is the classical single integral
//!
//! ```text
//! F(q; k) = k ∫ φ(z) · [Φ(z) − Φ(z − q)]^(k−1) dz
//! ```
//!
//! evaluated over z ∈ [−8, 8 + q]; the normal tails beyond 8 contribute
//! less than 1e-15 and are dropped. Quantiles invert the CDF by bisection.

use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

use crate::distributions::normal::erfc;
use crate::distributions::Probability;
use crate::error::{Error, Result};

/// CDF F(q; k, ∞) of the range of `k` independent standard normals.
pub fn studentized_range_cdf(q: f64, k: usize) -> Result<Probability> {
    if k < 2 {
        return Err(Error::domain(
            "studentized_range_cdf",
            format!("need at least 2 means, got k = {k}"),
        ));
    }
    if !q.is_finite() || q < 0.0 {
        return Err(Error::domain(
            "studentized_range_cdf",
            format!("range statistic must be finite and nonnegative, got {q}"),
        ));
    }
    if q == 0.0 {
        return Probability::new(0.0);
    }
    Probability::new(cdf_raw(q, k).clamp(0.0, 1.0))
}

/// Quantile q with F(q; k) = p, found by bisection on [0, 100] to an
/// interval width of 1e-7 (at most 200 halvings).
pub fn studentized_range_quantile(p: Probability, k: usize) -> Result<f64> {
    let pv = p.value();
    if pv <= 0.0 || pv >= 1.0 {
        return Err(Error::domain(
            "studentized_range_quantile",
            format!("quantile level must lie strictly inside (0, 1), got {pv}"),
        ));
    }
    if k < 2 {
        return Err(Error::domain(
            "studentized_range_quantile",
            format!("need at least 2 means, got k = {k}"),
        ));
    }

    let mut lo = 0.0f64;
    let mut hi = 100.0f64;
    if cdf_raw(hi, k) < pv {
        return Err(Error::convergence(
            "studentized_range_quantile",
            format!("level {pv} not bracketed below q = {hi} for k = {k}"),
        ));
    }
    let mut iterations = 0usize;
    while hi - lo > 1e-7 {
        iterations += 1;
        if iterations > 200 {
            return Err(Error::convergence(
                "studentized_range_quantile",
                format!("bisection exceeded 200 iterations for p = {pv}, k = {k}"),
            ));
        }
        let mid = 0.5 * (lo + hi);
        if cdf_raw(mid, k) < pv {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

// Fixed-panel Gauss-Legendre integration: 20-point rule on panels no wider
// than 0.25 keeps the absolute error of the smooth integrand below 1e-9
// across the full parameter range used here (verified against an adaptive
// Simpson oracle in the test suite).
fn cdf_raw(q: f64, k: usize) -> f64 {
    let lo = -8.0;
    let hi = 8.0 + q;
    let panels = ((hi - lo) / 0.25).ceil() as usize;
    let width = (hi - lo) / panels as f64;
    let (nodes, weights) = gauss_legendre_20();

    let mut total = 0.0;
    for panel in 0..panels {
        let mid = lo + (panel as f64 + 0.5) * width;
        let half = 0.5 * width;
        let mut acc = 0.0;
        for (&t, &w) in nodes.iter().zip(weights.iter()) {
            acc += w * integrand(mid + half * t, q, k);
        }
        total += acc * half;
    }
    k as f64 * total
}

#[inline]
fn integrand(z: f64, q: f64, k: usize) -> f64 {
    let phi = (-0.5 * z * z).exp() / (2.0 * PI).sqrt();
    // Φ(z) − Φ(z−q) written as an erfc difference: both tails stay accurate
    // and the subtraction cannot cancel catastrophically.
    let diff = 0.5 * (erfc((z - q) / SQRT_2) - erfc(z / SQRT_2));
    phi * diff.max(0.0).powi(k as i32 - 1)
}

fn gauss_legendre_20() -> (&'static [f64; 20], &'static [f64; 20]) {
    static CACHE: OnceLock<([f64; 20], [f64; 20])> = OnceLock::new();
    let (n, w) = CACHE.get_or_init(gauss_legendre::<20>);
    (n, w)
}

// Nodes and weights on [−1, 1] by Newton iteration on the Legendre
// recurrence; exact to machine precision for the sizes used here.
fn gauss_legendre<const N: usize>() -> ([f64; N], [f64; N]) {
    let mut nodes = [0.0; N];
    let mut weights = [0.0; N];
    let m = N.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (N as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(N, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(N, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[N - 1 - i] = x;
        weights[N - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let pj = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = pj;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
