//! Arithmetic route: k_{n,a} from prime-power sums.
//!
//! All three parameter domains share one arrangement,
//!
//! k = 1 - (-1 + 1/a)^n
//!     + sum_{j=1}^n C(n,j) b^j (-1)^j D_j(a) / (j-1)!
//!     + (n/2) b (psi(a/2) - ln pi)
//!     + sum_{j=2}^n C(n,j) (-1)^j 2^{-j} b^j zeta(j, a/2),        b = 2a - 1,
//!
//! with the regularized limits D_j of [`crate::mangoldt`]. For Re a > 1 the
//! limits split into absolutely convergent sums and integrals, which gives
//! the textbook form with 2 - (-1+1/a)^n - (-1-1/(a-1))^n; that form is
//! available as [`k_arith_supercritical_split`] but cancels badly for large n.

use crate::error::{Error, Result};
use crate::mangoldt::{normalized_limits, regularized_limit, LimitEstimate, LimitSchedule, MangoldtTable, Summation, DEFAULT_WINDOW};
use crate::record::{params_digest, LiCoefficientRecord, Route};
use crate::specfun::{binomial, digamma, hurwitz_zeta, ln_binomial, riemann_zeta, zeta_log_derivative, LN_PI, MAX_BINOMIAL_N};
use crate::zeros::{k_zero_sum, TailModel, ZeroTable};
use num_complex::Complex64;

/// Default distance kept from the critical line inside the strip.
pub const DEFAULT_EPS0: f64 = 0.1;
// Relative accuracy assumed for the digamma and Hurwitz evaluations.
const SPECFUN_REL: f64 = 1e-13;

/// Options shared by the arithmetic computations.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithOptions {
    /// Explicit schedule; `None` fits the default schedule to the table.
    pub schedule: Option<LimitSchedule>,
    pub summation: Summation,
    pub window: usize,
    /// Strip margin: Re a >= 1/2 + eps0 is required inside the strip.
    pub eps0: f64,
    /// Fail with `ToleranceUnreachable` when the uncertainty exceeds this.
    pub tolerance: Option<f64>,
}

impl Default for ArithOptions {
    fn default() -> Self {
        Self { schedule: None, summation: Summation::default(), window: DEFAULT_WINDOW, eps0: DEFAULT_EPS0, tolerance: None }
    }
}

impl ArithOptions {
    pub fn schedule_for(&self, table: &MangoldtTable) -> Result<LimitSchedule> {
        match &self.schedule {
            Some(s) => Ok(s.clone()),
            None => LimitSchedule::fitted(table.limit(), self.summation, self.window),
        }
    }
}

/// The arithmetic formula that applies to `a`.
pub fn classify(a: Complex64, eps0: f64) -> Result<Route> {
    if a.re > 1.0 {
        Ok(Route::ArithEq4)
    } else if a.re == 1.0 {
        Ok(Route::ArithEq5)
    } else if a.re >= 0.5 + eps0 {
        Ok(Route::ArithEq6)
    } else {
        Err(Error::Domain(format!(
            "no arithmetic formula for Re a = {} (need Re a >= 1/2 + {eps0})",
            a.re
        )))
    }
}

/// C(n, j) b^j (-1)^j for j = 1..=n; log-space for n > 20.
fn coefficients(n: u32, b: Complex64) -> Result<Vec<Complex64>> {
    if n as u64 > MAX_BINOMIAL_N {
        return Err(Error::Overflow { n: n as u64, max: MAX_BINOMIAL_N });
    }
    let lb = b.ln();
    (1..=n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            if n <= 20 {
                Ok(b.powi(j as i32) * (binomial(n as u64, j as u64)? as f64 * sign))
            } else {
                Ok((lb * j as f64 + ln_binomial(n as u64, j as u64)).exp() * sign)
            }
        })
        .collect()
}

/// The parts of the formula that do not involve prime sums.
struct Analytic {
    value: Complex64,
    magnitude: f64,
}

fn analytic_terms(n: u32, a: Complex64) -> Result<Analytic> {
    let b = 2.0 * a - 1.0;
    let c0 = 1.0 - (a.inv() - 1.0).powi(n as i32);
    let psi = digamma(a * 0.5)?;
    let arch = b * (n as f64 / 2.0) * (psi - LN_PI);
    let q = a * 0.5;
    let coef = coefficients(n, b * 0.5)?;
    let mut value = c0 + arch;
    let mut magnitude = c0.norm() + arch.norm();
    for j in 2..=n {
        let t = coef[j as usize - 1] * hurwitz_zeta(Complex64::new(j as f64, 0.0), q)?;
        value += t;
        magnitude += t.norm();
    }
    Ok(Analytic { value, magnitude })
}

fn assemble(
    n: u32,
    a: Complex64,
    route: Route,
    limits: &[LimitEstimate],
    schedule: &LimitSchedule,
    table: &MangoldtTable,
    tolerance: Option<f64>,
) -> Result<LiCoefficientRecord> {
    let b = 2.0 * a - 1.0;
    let coef = coefficients(n, b)?;
    let analytic = analytic_terms(n, a)?;
    let mut value = analytic.value;
    let mut uncertainty = 0.0;
    let mut magnitude = analytic.magnitude;
    for j in 0..n as usize {
        let t = coef[j] * limits[j].value;
        value += t;
        magnitude += t.norm();
        uncertainty += coef[j].norm() * limits[j].uncertainty;
    }
    uncertainty += 4.0 * f64::EPSILON * magnitude + SPECFUN_REL * analytic.magnitude;
    if let Some(tol) = tolerance {
        if uncertainty > tol {
            return Err(Error::ToleranceUnreachable { requested: tol, achieved: uncertainty });
        }
    }
    Ok(LiCoefficientRecord {
        n,
        a,
        route,
        value,
        uncertainty,
        params_digest: digest(route, n, a, table, schedule),
        conditional: route == Route::ArithEq6,
    })
}

fn digest(route: Route, n: u32, a: Complex64, table: &MangoldtTable, schedule: &LimitSchedule) -> String {
    params_digest(&[
        ("route", route.to_string()),
        ("n", n.to_string()),
        ("a", format!("{},{}", a.re, a.im)),
        ("mangoldt_limit", table.limit().to_string()),
        ("summation", format!("{:?}", schedule.summation)),
        ("checkpoints", format!("{:?}", schedule.checkpoints)),
        ("window", schedule.averaging_window.to_string()),
    ])
}

/// k_{n,a} for every n in `ns`, sharing one set of regularized limits.
pub fn k_arith_batch(ns: &[u32], a: Complex64, table: &MangoldtTable, opts: &ArithOptions) -> Result<Vec<LiCoefficientRecord>> {
    let route = classify(a, opts.eps0)?;
    if ns.contains(&0) {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    let nmax = ns.iter().copied().max().unwrap_or(0);
    if nmax as u64 > MAX_BINOMIAL_N {
        return Err(Error::Overflow { n: nmax as u64, max: MAX_BINOMIAL_N });
    }
    let schedule = opts.schedule_for(table)?;
    let limits = normalized_limits(table, a, nmax as usize, &schedule)?;
    ns.iter()
        .map(|&n| assemble(n, a, route, &limits, &schedule, table, opts.tolerance))
        .collect()
}

fn single(n: u32, a: Complex64, expected: Route, table: &MangoldtTable, opts: &ArithOptions) -> Result<LiCoefficientRecord> {
    let route = classify(a, opts.eps0)?;
    if route != expected {
        return Err(Error::Domain(format!("a = {a} is outside the domain of {expected}")));
    }
    Ok(k_arith_batch(&[n], a, table, opts)?.remove(0))
}

/// k_{n,a} for Re a > 1.
pub fn k_arith_supercritical(n: u32, a: Complex64, table: &MangoldtTable, opts: &ArithOptions) -> Result<LiCoefficientRecord> {
    single(n, a, Route::ArithEq4, table, opts)
}

/// k_{n,1+it}.
pub fn k_arith_line(n: u32, t: f64, table: &MangoldtTable, opts: &ArithOptions) -> Result<LiCoefficientRecord> {
    single(n, Complex64::new(1.0, t), Route::ArithEq5, table, opts)
}

/// k_{n,a} for 1/2 + eps0 <= Re a < 1. Valid only if all zeros lie on the
/// critical line; the record is flagged `conditional`.
pub fn k_arith_conditional(n: u32, a: Complex64, table: &MangoldtTable, opts: &ArithOptions) -> Result<LiCoefficientRecord> {
    single(n, a, Route::ArithEq6, table, opts)
}

/// The split form for Re a > 1: prime sums S_j and their integrals separated.
pub fn k_arith_supercritical_split(n: u32, a: Complex64, table: &MangoldtTable, opts: &ArithOptions) -> Result<LiCoefficientRecord> {
    if a.re <= 1.0 {
        return Err(Error::Domain(format!("the split form needs Re a > 1, got {a}")));
    }
    let schedule = opts.schedule_for(table)?;
    let limits = normalized_limits(table, a, n as usize, &schedule)?;
    let b = 2.0 * a - 1.0;
    let coef = coefficients(n, b)?;
    let analytic = analytic_terms(n, a)?;
    // sum_j coef_j (a-1)^{-j} folds into 1 - (-1 - 1/(a-1))^n.
    let c1 = 1.0 - (-1.0 - (a - 1.0).inv()).powi(n as i32);
    let mut value = analytic.value + c1;
    let mut uncertainty = 0.0;
    for j in 0..n as usize {
        let s_j = limits[j].value + (a - 1.0).powi(-(j as i32 + 1));
        value += coef[j] * s_j;
        uncertainty += coef[j].norm() * limits[j].uncertainty;
    }
    Ok(LiCoefficientRecord {
        n,
        a,
        route: Route::ArithEq4,
        value,
        uncertainty,
        params_digest: digest(Route::ArithEq4, n, a, table, &schedule),
        conditional: false,
    })
}

/// Classical Li coefficient lambda_n = k_{n,1}. Checks the Hurwitz
/// reduction zeta(j, 1/2) = (2^j - 1) zeta(j) for every order used.
pub fn classical_li(n: u32, table: &MangoldtTable, opts: &ArithOptions) -> Result<LiCoefficientRecord> {
    for j in 2..=n.max(2) {
        let s = Complex64::new(j as f64, 0.0);
        let h = hurwitz_zeta(s, Complex64::new(0.5, 0.0))?.re;
        let r = (2f64.powi(j as i32) - 1.0) * riemann_zeta(s)?.re;
        if (h - r).abs() > 1e-12 * r.abs() {
            return Err(Error::Inconsistent(format!("Hurwitz reduction fails at j = {j}: {h} vs {r}")));
        }
    }
    k_arith_line(n, 0.0, table, opts)
}

/// Both sides of sum_rho 1/(a - rho) = 1/a + 1/(a-1) - sum Lambda(m)/m^a + (psi(a/2) - ln pi)/2.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderIdentity {
    pub lhs: Complex64,
    pub lhs_uncertainty: f64,
    pub rhs: Complex64,
    pub rhs_uncertainty: f64,
}

/// Zero-sum side and prime-sum side of the first-order identity at Re a > 1.
pub fn first_order_identity(a: Complex64, table: &MangoldtTable, zeros: &ZeroTable, tail: &TailModel, opts: &ArithOptions) -> Result<FirstOrderIdentity> {
    if a.re <= 1.0 {
        return Err(Error::Domain(format!("identity needs Re a > 1, got {a}")));
    }
    let b = 2.0 * a - 1.0;
    let z = k_zero_sum(1, a, zeros, tail)?;
    let schedule = opts.schedule_for(table)?;
    let d1 = regularized_limit(table, a, 1, &schedule)?;
    let s1 = d1.value + (a - 1.0).inv();
    let psi = digamma(a * 0.5)?;
    let rhs = a.inv() + (a - 1.0).inv() - s1 + 0.5 * (psi - LN_PI);
    Ok(FirstOrderIdentity { lhs: z.value / b, lhs_uncertainty: z.uncertainty / b.norm(), rhs, rhs_uncertainty: d1.uncertainty })
}

/// zeta'/zeta(a) as -lim (sum_{m<=N} Lambda(m)/m^a - N^{1-a}/(1-a)) next to its direct value.
#[derive(Debug, Clone, PartialEq)]
pub struct LogDerivLimit {
    pub limit_value: Complex64,
    pub uncertainty: f64,
    pub direct_value: Complex64,
}

pub fn zeta_logderiv_limit(a: Complex64, table: &MangoldtTable, opts: &ArithOptions) -> Result<LogDerivLimit> {
    if a.re < 0.5 + opts.eps0 || a == Complex64::new(1.0, 0.0) {
        return Err(Error::Domain(format!("need Re a >= 1/2 + {} and a != 1, got {a}", opts.eps0)));
    }
    let schedule = opts.schedule_for(table)?;
    let d1 = regularized_limit(table, a, 1, &schedule)?;
    Ok(LogDerivLimit {
        limit_value: -d1.value + (1.0 - a).inv(),
        uncertainty: d1.uncertainty,
        direct_value: zeta_log_derivative(a)?,
    })
}
