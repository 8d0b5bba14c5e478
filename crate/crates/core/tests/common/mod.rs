//! Independent numeric oracles for the integration suites.
//!
//! Everything here deliberately avoids the implementation's code paths:
//! the normal CDF comes from a Taylor series / Lentz continued fraction
//! instead of Cody's rational fits, log-gamma from a Stirling series
//! instead of Lanczos, and integrals from adaptive Simpson instead of
//! fixed Gauss-Legendre panels.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use cdrank_core::{NemenyiParams, Probability};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn prob(p: f64) -> Probability {
    Probability::new(p).unwrap()
}

// ---------------------------------------------------------------------------
// Adaptive Simpson quadrature.

pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fb, fm, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, fm, flm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, fb, frm, right, 0.5 * tol, depth - 1)
    }
}

// ---------------------------------------------------------------------------
// Normal CDF oracle: Taylor series for the bulk, continued fraction tails.

/// erf by its Maclaurin series; accurate to ~1e-15 for |x| <= 2.
fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let x2 = x * x;
    for n in 1..200 {
        let nf = n as f64;
        term *= -x2 / nf;
        let contrib = term / (2.0 * nf + 1.0);
        sum += contrib;
        if contrib.abs() < 1e-18 {
            break;
        }
    }
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

/// erfc by the Laplace continued fraction
/// erfc(x) = e^(−x²)/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
/// evaluated with modified Lentz; used for x > 2 where it converges quickly.
fn erfc_continued_fraction(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = TINY;
    let mut c = TINY;
    let mut d = 0.0;
    for n in 1..500 {
        let a = if n == 1 { 1.0 } else { (n as f64 - 1.0) / 2.0 };
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() * f
}

pub fn oracle_normal_cdf(x: f64) -> f64 {
    let y = x / std::f64::consts::SQRT_2;
    if y.abs() <= 2.0 {
        0.5 * (1.0 + erf_series(y))
    } else if y > 0.0 {
        1.0 - 0.5 * erfc_continued_fraction(y)
    } else {
        0.5 * erfc_continued_fraction(-y)
    }
}

/// Mills-ratio sandwich for the normal tail: for x > 0,
/// φ(x)(1/x − 1/x³) < Φ(−x) < φ(x)/x.
pub fn mills_bounds(x: f64) -> (f64, f64) {
    let phi = (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
    (phi * (1.0 / x - 1.0 / (x * x * x)), phi / x)
}

// ---------------------------------------------------------------------------
// Chi-square survival oracle: Stirling log-gamma + upper-tail quadrature.

/// Stirling series with Bernoulli terms; arguments below 10 are shifted up
/// by the recurrence Γ(z+1) = zΓ(z).
pub fn oracle_ln_gamma(z: f64) -> f64 {
    assert!(z > 0.0);
    let mut shift = 0.0;
    let mut z = z;
    while z < 10.0 {
        shift -= z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            + inv2
                * (-1.0 / 360.0
                    + inv2
                        * (1.0 / 1260.0
                            + inv2 * (-1.0 / 1680.0 + inv2 * (1.0 / 1188.0)))));
    shift + (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + series
}

fn chi_square_pdf(t: f64, df: f64) -> f64 {
    let a = df / 2.0;
    ((a - 1.0) * t.ln() - t / 2.0 - a * 2.0f64.ln() - oracle_ln_gamma(a)).exp()
}

/// SF(x; df) as the quadrature of the density over the upper tail.
pub fn oracle_chi_square_sf(x: f64, df: usize) -> f64 {
    assert!(x > 0.0);
    let dff = df as f64;
    // Beyond this point the integrand is far below the comparison tolerance.
    let upper = (x.max(2.0 * dff) + 300.0).max(x + 50.0);
    adaptive_simpson(&|t| chi_square_pdf(t, dff), x, upper, 1e-12)
}

// ---------------------------------------------------------------------------
// Studentized range oracle: adaptive Simpson over the classical integral,
// quantile by bisection against that oracle CDF.

pub fn oracle_studentized_range_cdf(q: f64, k: usize) -> f64 {
    assert!(q >= 0.0 && k >= 2);
    if q == 0.0 {
        return 0.0;
    }
    let integrand = |z: f64| {
        let phi = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let diff = (oracle_normal_cdf(z) - oracle_normal_cdf(z - q)).max(0.0);
        phi * diff.powi(k as i32 - 1)
    };
    // The weight φ(z) confines all mass to [-8, 8]; truncation error is below
    // 1e-13 even after the factor k. For large k the power term turns the
    // integrand into a spike of width O(1/sqrt(k)) near z = q/2, which a
    // whole-interval split can step over entirely, so seed the recursion from
    // fixed half-unit panels instead of one span.
    let mut total = 0.0;
    for i in 0..32 {
        let a = -8.0 + 0.5 * i as f64;
        total += adaptive_simpson(&integrand, a, a + 0.5, 1e-12);
    }
    (k as f64) * total
}

pub fn oracle_studentized_range_quantile(p: f64, k: usize) -> f64 {
    assert!(p > 0.0 && p < 1.0);
    let mut lo = 0.0f64;
    let mut hi = 100.0f64;
    assert!(oracle_studentized_range_cdf(hi, k) >= p);
    while hi - lo > 1e-7 {
        let mid = 0.5 * (lo + hi);
        if oracle_studentized_range_cdf(mid, k) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

// ---------------------------------------------------------------------------
// Brute-force mid-rank oracle: rank = #worse + (#tied + 1)/2, by scan.

pub fn oracle_rank_row(values: &[f64], higher_is_better: bool) -> Vec<f64> {
    let key: Vec<f64> = values
        .iter()
        .map(|&v| if higher_is_better { v } else { -v })
        .collect();
    key.iter()
        .map(|&ki| {
            let worse = key.iter().filter(|&&kj| kj < ki).count();
            let tied = key.iter().filter(|&&kj| kj == ki).count();
            worse as f64 + (tied as f64 + 1.0) / 2.0
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Quantile cache so property loops do not recompute q(1−α; k) per instance.

static QUANTILE_CACHE: OnceLock<Mutex<HashMap<(u64, usize), f64>>> = OnceLock::new();

/// NemenyiParams with the quantile memoized per (alpha, k); the cd is the
/// exact product q_alpha · √(k(k+1)/(6n)) either way.
pub fn cached_params(alpha: f64, k: usize, n: usize) -> NemenyiParams {
    let cache = QUANTILE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let q_alpha = {
        let mut map = cache.lock().unwrap();
        *map.entry((alpha.to_bits(), k)).or_insert_with(|| {
            cdrank_core::studentized_range_quantile(prob(1.0 - alpha), k).unwrap()
                / std::f64::consts::SQRT_2
        })
    };
    let scale = (k as f64 * (k as f64 + 1.0) / (6.0 * n as f64)).sqrt();
    NemenyiParams::with_cd(prob(alpha), k, n, q_alpha * scale).unwrap()
}
