//! Quadrature rules: composite Gauss-Legendre for smooth integrands and
//! double-exponential (tanh-sinh, exp-sinh) rules for endpoint singularities.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

/// Result of an adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(20))
}

/// Composite 20-point Gauss-Legendre over `[a, b]` with `panels` equal panels.
/// `f` receives the node and accumulates into a caller-owned state, which lets
/// vector-valued integrands share one pass.
pub fn gl_composite_with<F: FnMut(f64, f64)>(a: f64, b: f64, panels: usize, mut f: F) {
    let (x, w) = gl20();
    let h = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        for (xi, wi) in x.iter().zip(w) {
            f(mid + 0.5 * h * xi, 0.5 * h * wi);
        }
    }
}

/// Composite 20-point Gauss-Legendre for a scalar complex integrand.
pub fn gl_composite<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, panels: usize) -> Complex64 {
    let mut acc = crate::sum::ComplexKahan::new();
    gl_composite_with(a, b, panels, |x, w| acc.add(f(x) * w));
    acc.value()
}

const TS_MAX_LEVEL: usize = 12;
const TS_T_MAX: f64 = 6.0;

/// Adaptive tanh-sinh quadrature over the finite interval `[a, b]`.
///
/// `f` receives `(x, d)` where `d` is the distance from `x` to the nearest
/// endpoint, computed without cancellation. Integrable endpoint
/// singularities are handled; interior singularities are not.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> Complex64,
{
    let half = 0.5 * (b - a);
    let mut evals = 0usize;
    // Contribution of the abscissa pair at parameter t (t = 0 counted once).
    let pair = |t: f64, evals: &mut usize| -> Complex64 {
        let s = FRAC_PI_2 * t.sinh();
        let c = s.cosh();
        let w = half * FRAC_PI_2 * t.cosh() / (c * c);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        // Distance from the nearer endpoint: (b - a) / (exp(2|s|) + 1).
        let d = (b - a) / ((2.0 * s.abs()).exp() + 1.0);
        if t == 0.0 {
            *evals += 1;
            return f(a + half, half) * w;
        }
        if d <= 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        *evals += 2;
        (f(a + d, d) + f(b - d, d)) * w
    };
    let mut h = 1.0;
    let mut sum = pair(0.0, &mut evals);
    let mut k = 1;
    while k as f64 * h <= TS_T_MAX {
        sum += pair(k as f64 * h, &mut evals);
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 1..TS_MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= TS_T_MAX {
            sum += pair(k as f64 * h, &mut evals);
            k += 2;
        }
        let next = sum * h;
        let err = (next - estimate).norm();
        estimate = next;
        if !estimate.re.is_finite() || !estimate.im.is_finite() {
            return Err(Error::Quadrature("non-finite integrand value".into()));
        }
        if err <= tol * estimate.norm().max(1e-300) || err < 1e-300 {
            return Ok(QuadResult { value: estimate, error: err, evaluations: evals });
        }
    }
    Err(Error::Quadrature(format!(
        "tanh-sinh did not reach tolerance {tol:e} on [{a}, {b}]"
    )))
}

/// Adaptive exp-sinh quadrature over `[a, inf)`; `f` receives `x - a` as well.
pub fn exp_sinh<F>(f: F, a: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> Complex64,
{
    let mut evals = 0usize;
    let node = |t: f64, evals: &mut usize| -> Complex64 {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        let w = FRAC_PI_2 * t.cosh() * e;
        if e == 0.0 || !w.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        *evals += 1;
        let v = f(a + e, e);
        if v == Complex64::new(0.0, 0.0) {
            v
        } else {
            v * w
        }
    };
    let (t_lo, t_hi) = (-4.5, 4.0);
    let mut h = 0.5;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut t = t_lo;
    while t <= t_hi {
        sum += node(t, &mut evals);
        t += h;
    }
    let mut estimate = sum * h;
    for _ in 1..TS_MAX_LEVEL {
        h *= 0.5;
        let mut t = t_lo + h;
        while t <= t_hi {
            sum += node(t, &mut evals);
            t += 2.0 * h;
        }
        let next = sum * h;
        let err = (next - estimate).norm();
        estimate = next;
        if !estimate.re.is_finite() || !estimate.im.is_finite() {
            return Err(Error::Quadrature("non-finite integrand value".into()));
        }
        if err <= tol * estimate.norm().max(1e-300) || err < 1e-300 {
            return Ok(QuadResult { value: estimate, error: err, evaluations: evals });
        }
    }
    Err(Error::Quadrature(format!("exp-sinh did not reach tolerance {tol:e}")))
}
