//! Independent numeric routes used to cross-check the library's quantiles:
//! a series/continued-fraction normal CDF and adaptive Simpson quadrature,
//! sharing no code with the implementation under test.

/// Adaptive Simpson with the standard 15x error test and correction term.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
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
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// erf by Maclaurin series; converges fast for |y| <= 2.
fn erf_series(y: f64) -> f64 {
    let mut term = y;
    let mut sum = y;
    for n in 1..300 {
        let nf = n as f64;
        term *= -y * y / nf;
        sum += term / (2.0 * nf + 1.0);
    }
    sum * 2.0 / std::f64::consts::PI.sqrt()
}

/// erfc by the Laplace continued fraction (modified Lentz); accurate for
/// y > 2.
fn erfc_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = tiny;
    let mut c = tiny;
    let mut d = 0.0;
    for n in 1..400 {
        let a = if n == 1 { 1.0 } else { (n - 1) as f64 / 2.0 };
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() * f
}

/// Phi(x) with the series below |z| = 2·sqrt(2) and the continued fraction
/// in the tails.
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

/// Range CDF by quadrature of k·phi(z)·[Phi(z) − Phi(z−q)]^(k−1). Fixed
/// half-unit panels keep the adaptive splitter from stepping over the
/// O(1/sqrt(k))-wide spike the power term creates.
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
    let mut total = 0.0;
    for i in 0..32 {
        let a = -8.0 + 0.5 * i as f64;
        total += adaptive_simpson(&integrand, a, a + 0.5, 1e-12);
    }
    (k as f64) * total
}

/// Quantile by bisection against the oracle CDF.
pub fn oracle_studentized_range_quantile(p: f64, k: usize) -> f64 {
    assert!(p > 0.0 && p < 1.0);
    let mut lo = 0.0f64;
    let mut hi = 50.0f64;
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
