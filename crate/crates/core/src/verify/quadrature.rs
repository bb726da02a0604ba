//! Quadrature kernels for the verification checks.
//!
//! Radial integrals of metric lengths have an integrable endpoint singularity
//! `t^gamma` (gamma > -1) at the origin; the double-exponential (tanh-sinh)
//! rule converges geometrically for those. Angular integrals are smooth and
//! periodic, where the doubling trapezoid rule is spectrally accurate. The
//! energy integrand is smooth away from the endpoints after the logarithmic
//! substitution and is handled by composite Gauss-Legendre panels.

use crate::error::{Result, TodaError};

/// Integrate `f` over `[a, b]` by the tanh-sinh rule. `f` receives the
/// distance from the nearer endpoint as a second argument so integrands can
/// resolve endpoint singularities without cancellation; the abscissa passed
/// first is already formed from that distance.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    assert!(b > a);
    let half = 0.5 * (b - a);
    // Wide enough that the truncated wings are negligible even for endpoint
    // singularities as strong as x^{-0.9} (decay rate 0.1 pi sinh t).
    let t_max = 6.5;
    let eval = |t: f64| -> f64 {
        let u = std::f64::consts::FRAC_PI_2 * t.sinh();
        // distance from the nearer endpoint, computed without cancellation
        let (x, sech2) = if t >= 0.0 {
            let one_minus_tanh = 2.0 / (1.0 + (2.0 * u).exp());
            (b - half * one_minus_tanh, sech_sq(u))
        } else {
            let one_plus_tanh = 2.0 / (1.0 + (-2.0 * u).exp());
            (a + half * one_plus_tanh, sech_sq(u))
        };
        let weight = half * std::f64::consts::FRAC_PI_2 * t.cosh() * sech2;
        if weight == 0.0 || x <= a || x >= b {
            return 0.0;
        }
        let v = f(x) * weight;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };

    let mut h = 1.0;
    let mut estimate = {
        let steps = (t_max / h) as i64;
        let mut s = eval(0.0);
        for k in 1..=steps {
            s += eval(k as f64 * h) + eval(-(k as f64) * h);
        }
        s * h
    };
    for _level in 0..12 {
        h *= 0.5;
        // refine with the new midpoints only
        let steps = (t_max / h) as i64;
        let mut s = 0.0;
        let mut k = 1;
        while k <= steps {
            s += eval(k as f64 * h) + eval(-(k as f64) * h);
            k += 2;
        }
        let refined = 0.5 * estimate + s * h;
        let delta = (refined - estimate).abs();
        estimate = refined;
        if delta <= rel_tol * estimate.abs().max(1e-300) && _level >= 2 {
            return Ok(estimate);
        }
    }
    Err(TodaError::QuadratureFailure {
        context: format!("tanh-sinh did not converge on [{a}, {b}]"),
    })
}

fn sech_sq(u: f64) -> f64 {
    let e = u.abs().exp();
    let c = 0.5 * (e + 1.0 / e);
    1.0 / (c * c)
}

/// Integrate a smooth `2 pi`-periodic function over a full period by the
/// doubling trapezoid rule (spectrally accurate).
pub fn periodic_trapezoid<F>(f: F, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut n = 32usize;
    let mut prev = {
        let h = two_pi / n as f64;
        (0..n).map(|j| f(j as f64 * h)).sum::<f64>() * h
    };
    while n <= 4096 {
        n *= 2;
        let h = two_pi / n as f64;
        // reuse: new points are the odd multiples of h
        let mut s = 0.0;
        let mut j = 1;
        while j < n {
            s += f(j as f64 * h);
            j += 2;
        }
        let refined = 0.5 * prev + s * h;
        let delta = (refined - prev).abs();
        prev = refined;
        if delta <= rel_tol * refined.abs().max(1e-300) {
            return Ok(refined);
        }
    }
    Err(TodaError::QuadratureFailure {
        context: "periodic trapezoid did not converge".into(),
    })
}

/// Composite Gauss-Legendre quadrature over `[a, b]` with panels of width at
/// most `max_panel`.
pub fn gauss_legendre_composite<F>(mut f: F, a: f64, b: f64, max_panel: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let (nodes, weights) = gauss_legendre_rule();
    let panels = (((b - a) / max_panel).ceil() as usize).max(1);
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let c = lo + 0.5 * width;
        let d = 0.5 * width;
        let mut s = 0.0;
        for (x, w) in nodes.iter().zip(&weights) {
            s += w * f(c + d * x);
        }
        total += s * d;
    }
    total
}

/// 32-point Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration
/// on the Legendre polynomial.
fn gauss_legendre_rule() -> (Vec<f64>, Vec<f64>) {
    let m = 32usize;
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(m, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// Legendre polynomial `P_m(x)` and its derivative by the three-term
/// recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=m {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
