//! Mellin-pair laboratory for the test functions g_{n,a}.
//!
//! g_{n,a}(x) = P(x) = x^{a-1} sum_{j=1}^n C(n,j) b^j ln^{j-1}(x) / (j-1)! on (0,1),
//! n b / 2 at x = 1 and 0 beyond, with b = 2a - 1. Its Mellin transform is
//! 1 - (1 - b / (s + a - 1))^n. The truncated variant g_{n,eps} is cut off
//! below eps.

use crate::error::{Error, Result};
use crate::mangoldt::MangoldtTable;
use crate::quad::{exp_sinh, tanh_sinh};
use crate::specfun::{binomial, digamma, expm1, hurwitz_zeta, laguerre_l1_complex, log1p, EULER_GAMMA, LN_PI};
use crate::sum::{map_chunks, ComplexKahan};
use crate::zeros::{k_zero_sum, TailModel, ZeroTable};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt::Write as _;

const QUAD_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunctionSpec {
    pub n: u32,
    pub a: Complex64,
    /// Truncation point; 0 means untruncated.
    pub eps: f64,
}

impl TestFunctionSpec {
    pub fn new(n: u32, a: Complex64, eps: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if !(0.0..1.0).contains(&eps) {
            return Err(Error::Domain(format!("eps must lie in [0, 1), got {eps}")));
        }
        if n as u64 > crate::specfun::MAX_BINOMIAL_N {
            return Err(Error::Overflow { n: n as u64, max: crate::specfun::MAX_BINOMIAL_N });
        }
        Ok(Self { n, a, eps })
    }

    pub fn b(&self) -> Complex64 {
        2.0 * self.a - 1.0
    }

    /// C(n,j) b^j / (j-1)! for j = 1..n.
    fn coefficients(&self) -> Vec<Complex64> {
        let b = self.b();
        let mut out = Vec::with_capacity(self.n as usize);
        let mut bj = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for j in 1..=self.n as u64 {
            bj *= b;
            if j > 1 {
                fact *= (j - 1) as f64;
            }
            out.push(bj * (binomial(self.n as u64, j).unwrap_or(0) as f64 / fact));
        }
        out
    }

    /// Value at the jump x = 1.
    pub fn midpoint(&self) -> Complex64 {
        self.b() * (self.n as f64 / 2.0)
    }
}

fn log_poly(coef: &[Complex64], ell: f64) -> Complex64 {
    coef.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * ell + c)
}

fn untruncated_p(spec: &TestFunctionSpec, x: f64) -> Complex64 {
    let ell = x.ln();
    ((spec.a - 1.0) * ell).exp() * log_poly(&spec.coefficients(), ell)
}

/// g_{n,a} (or g_{n,eps}) at x > 0, with half values at the jumps.
pub fn eval_g(spec: &TestFunctionSpec, x: f64) -> Complex64 {
    if x > 1.0 || x < spec.eps {
        return Complex64::new(0.0, 0.0);
    }
    if x == 1.0 {
        return spec.midpoint();
    }
    let p = untruncated_p(spec, x);
    if x == spec.eps {
        0.5 * p
    } else {
        p
    }
}

/// P~(x) = x^{-a} sum C(n,j) (-1)^{j-1} b^j ln^{j-1}(x) / (j-1)!, equal to P(1/x) / x.
pub fn eval_p_tilde(spec: &TestFunctionSpec, x: f64) -> Complex64 {
    let ell = x.ln();
    (-spec.a * ell).exp() * log_poly(&spec.coefficients(), -ell)
}

/// P through the Laguerre form x^{a-1} b L1_{n-1}(-b ln x).
pub fn p_laguerre(spec: &TestFunctionSpec, x: f64) -> Complex64 {
    let b = spec.b();
    let ell = x.ln();
    ((spec.a - 1.0) * ell).exp() * b * laguerre_l1_complex(spec.n - 1, -b * ell)
}

/// P~ through the Laguerre form x^{-a} b L1_{n-1}(b ln x).
pub fn p_tilde_laguerre(spec: &TestFunctionSpec, x: f64) -> Complex64 {
    let b = spec.b();
    let ell = x.ln();
    (-spec.a * ell).exp() * b * laguerre_l1_complex(spec.n - 1, b * ell)
}

/// |x^{a-1}| sum_j |C(n,j) b^j ln^{j-1}(x) / (j-1)!|, the rounding scale of P(x).
pub fn p_scale(spec: &TestFunctionSpec, x: f64) -> f64 {
    let ell = x.ln();
    let mags: Vec<Complex64> = spec.coefficients().iter().map(|c| Complex64::new(c.norm(), 0.0)).collect();
    x.powf(spec.a.re - 1.0) * log_poly(&mags, ell.abs()).re
}

/// Rounding scale of P~(x), the analogue of [`p_scale`].
pub fn p_tilde_scale(spec: &TestFunctionSpec, x: f64) -> f64 {
    p_scale(spec, 1.0 / x) / x
}

/// 1 - (1 - b / (s + a - 1))^n.
pub fn mellin_closed(spec: &TestFunctionSpec, s: Complex64) -> Result<Complex64> {
    let c = s + spec.a - 1.0;
    if c.norm() == 0.0 {
        return Err(Error::Pole { at: s });
    }
    Ok(-expm1(log1p(-spec.b() / c) * spec.n as f64))
}

/// int_0^inf e^{-c u} sum_j coef_j (-u)^{j-1} du by exp-sinh.
fn laplace_numeric(spec: &TestFunctionSpec, c: Complex64) -> Result<(Complex64, f64)> {
    let coef = spec.coefficients();
    let q = exp_sinh(|u, _| (-c * u).exp() * log_poly(&coef, -u), 0.0, QUAD_TOL)?;
    Ok((q.value, q.error))
}

/// Numeric and closed-form Mellin transform of g_{n,a} for Re(s + a) > 1.
pub fn forward_mellin(spec: &TestFunctionSpec, s: Complex64) -> Result<(Complex64, Complex64)> {
    let c = s + spec.a - 1.0;
    if c.re <= 0.0 {
        return Err(Error::Domain(format!("Mellin integral needs Re(s + a) > 1, got s + a = {}", s + spec.a)));
    }
    // x = e^{-u}: P(x) x^{s-1} dx = e^{-c u} poly(-u) du.
    let (numeric, _) = laplace_numeric(spec, c)?;
    Ok((numeric, mellin_closed(spec, s)?))
}

/// e^{-y} sum_{i<k} y^i / i!, the regularized upper incomplete gamma Q(k, y).
fn upper_gamma_q(k: u32, y: Complex64) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut acc = term;
    for i in 1..k {
        term = term * y / i as f64;
        acc += term;
    }
    (-y).exp() * acc
}

/// The regularized lower incomplete gamma P(k, y) = 1 - Q(k, y).
fn lower_gamma_p(k: u32, y: Complex64) -> Complex64 {
    if y.norm() < 1.0 {
        // e^{-y} sum_{i>=k} y^i / i!, no cancellation.
        let mut term = Complex64::new(1.0, 0.0);
        for i in 1..=k {
            term = term * y / i as f64;
        }
        let mut acc = term;
        let mut i = k + 1;
        while term.norm() > 1e-18 * acc.norm() {
            term = term * y / i as f64;
            acc += term;
            i += 1;
        }
        (-y).exp() * acc
    } else {
        1.0 - upper_gamma_q(k, y)
    }
}

fn truncation_parts(spec: &TestFunctionSpec, s: Complex64) -> Result<(Complex64, Complex64, f64)> {
    if !(spec.eps > 0.0 && spec.eps < 1.0) {
        return Err(Error::Domain(format!("truncation needs 0 < eps < 1, got {}", spec.eps)));
    }
    let c = s + spec.a - 1.0;
    if c.norm() == 0.0 {
        return Err(Error::Pole { at: s });
    }
    let big_u = -spec.eps.ln();
    Ok((c, c * big_u, big_u))
}

/// int_eps^1 P(x) x^{s-1} dx in closed form; defined for every s with s + a != 1.
pub fn truncated_mellin(spec: &TestFunctionSpec, s: Complex64) -> Result<Complex64> {
    let (c, y, _) = truncation_parts(spec, s)?;
    let b = spec.b();
    let mut acc = ComplexKahan::new();
    let mut ratio = Complex64::new(1.0, 0.0);
    for j in 1..=spec.n {
        ratio *= -b / c;
        let cj = binomial(spec.n as u64, j as u64)? as f64;
        acc.add(-ratio * cj * lower_gamma_p(j, y));
    }
    Ok(acc.value())
}

/// g^_n(s) - g^_{n,eps}(s) = eps^c sum_j C(n,j) (-1)^{j-1} b^j c^{-j} e_{j-1}(c ln(1/eps)).
pub fn truncation_defect(spec: &TestFunctionSpec, s: Complex64) -> Result<Complex64> {
    let (c, y, _) = truncation_parts(spec, s)?;
    let b = spec.b();
    let mut acc = ComplexKahan::new();
    let mut ratio = Complex64::new(1.0, 0.0);
    for j in 1..=spec.n {
        ratio *= -b / c;
        let cj = binomial(spec.n as u64, j as u64)? as f64;
        acc.add(-ratio * cj * upper_gamma_q(j, y));
    }
    Ok(acc.value())
}

/// Leading term of the defect for small eps: T_n(ln eps) eps^c / c.
pub fn defect_leading_term(spec: &TestFunctionSpec, s: Complex64) -> Result<Complex64> {
    let (c, _, big_u) = truncation_parts(spec, s)?;
    Ok(log_poly(&spec.coefficients(), -big_u) * (c * -big_u).exp() / c)
}

/// The five terms of the explicit formula for g_{n,a} next to the zero side.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilTermBreakdown {
    pub integral_0_inf_f: Complex64,
    pub integral_0_inf_f_tilde: Complex64,
    /// sum_m Lambda(m) (f(m) + f~(m)), table part plus the smooth tail.
    pub lambda_sum: Complex64,
    pub archimedean_f1: Complex64,
    pub compensated_integral: Complex64,
    /// f-integral + f~-integral - lambda sum - archimedean term - compensated integral.
    pub total: Complex64,
    pub zero_side: Complex64,
    pub zero_side_uncertainty: f64,
    pub quadrature_error: f64,
    pub lambda_tail: Complex64,
    pub lambda_tail_error: f64,
    /// Closed forms of the three integrals, for cross-checking the quadrature.
    pub closed_f: Complex64,
    pub closed_f_tilde: Complex64,
    pub closed_compensated: Complex64,
}

impl WeilTermBreakdown {
    pub fn discrepancy(&self) -> f64 {
        (self.total - self.zero_side).norm()
    }

    /// Quadrature, prime-tail and zero-tail uncertainties together.
    pub fn tail_uncertainty(&self) -> f64 {
        self.quadrature_error + self.lambda_tail_error + self.zero_side_uncertainty
    }
}

/// Evaluates each explicit-formula term independently for Re a > 1.
pub fn weil_breakdown(
    spec: &TestFunctionSpec,
    table: &MangoldtTable,
    zeros: &ZeroTable,
    tail: &TailModel,
) -> Result<WeilTermBreakdown> {
    let a = spec.a;
    if a.re <= 1.0 {
        return Err(Error::Domain(format!("explicit formula breakdown needs Re a > 1, got {a}")));
    }
    if spec.eps != 0.0 {
        return Err(Error::Domain("breakdown is defined for the untruncated function".into()));
    }
    let n = spec.n;
    let b = spec.b();
    let coef = spec.coefficients();

    // int_0^1 P and int_0^1 P(u)/u, with x = e^{-u}.
    let (t1, e1) = laplace_numeric(spec, a)?;
    let (t2, e2) = laplace_numeric(spec, a - 1.0)?;

    // Only f~ contributes for m >= 2.
    let entries = table.entries();
    let parts = map_chunks(entries.len(), |r| {
        let mut acc = ComplexKahan::new();
        for e in &entries[r] {
            acc.add(eval_p_tilde(spec, e.m as f64) * e.log_p);
        }
        acc
    });
    let mut lam = ComplexKahan::new();
    for p in &parts {
        lam.merge(p);
    }
    let big_n = table.limit() as f64;
    let (lambda_tail, lambda_tail_error) = prime_tail(spec, big_n)?;
    let t3 = lam.value() + lambda_tail;

    let t4 = (LN_PI + EULER_GAMMA) * spec.midpoint();

    // int_1^inf {f + f~ - 2 f(1)/x^2} x/(x^2-1) dx with u = 1/x becomes
    // int_0^1 (P(u) - n b u) / (1 - u^2) du; the j = 1 part of the numerator
    // is n b u expm1((a-2) ln u), which stays accurate as u -> 1.
    let nb = b * n as f64;
    let limit_at_one = -(nb * (a - 2.0) + b * b * (n as f64 * (n as f64 - 1.0) / 2.0)) * 0.5;
    let integrand = |u: f64, d: f64| -> Complex64 {
        if d == 0.0 && u > 0.5 {
            return limit_at_one;
        }
        let (ell, one_minus_u2) = if u > 0.5 {
            (log1p(Complex64::new(-d, 0.0)).re, d * (2.0 - d))
        } else {
            (u.ln(), 1.0 - u * u)
        };
        let first = nb * u * expm1((a - 2.0) * ell);
        let rest = (ell * (a - 1.0)).exp() * ell * log_poly(&coef[1..], ell);
        (first + rest) / one_minus_u2
    };
    let q5 = tanh_sinh(integrand, 0.0, 1.0, 1e-12)?;
    let t5 = q5.value;

    let total = t1 + t2 - t3 - t4 - t5;
    let z = k_zero_sum(n, a, zeros, tail)?;

    let closed_f = mellin_closed(spec, Complex64::new(1.0, 0.0))?;
    let closed_f_tilde = mellin_closed(spec, Complex64::new(0.0, 0.0))?;
    let closed_compensated = compensated_closed(spec)?;

    Ok(WeilTermBreakdown {
        integral_0_inf_f: t1,
        integral_0_inf_f_tilde: t2,
        lambda_sum: t3,
        archimedean_f1: t4,
        compensated_integral: t5,
        total,
        zero_side: z.value,
        zero_side_uncertainty: z.uncertainty,
        quadrature_error: e1 + e2 + q5.error + 4.0 * f64::EPSILON * (t1.norm() + t2.norm() + t3.norm() + t4.norm() + t5.norm()),
        lambda_tail,
        lambda_tail_error,
        closed_f,
        closed_f_tilde,
        closed_compensated,
    })
}

/// int_N^inf P~(x) dx with an error bound for replacing psi(x) by x. The
/// bound uses |psi(x) - x| < sqrt(x) ln^2(x) / (8 pi), valid for x >= 73.2
/// under the Riemann hypothesis.
fn prime_tail(spec: &TestFunctionSpec, big_n: f64) -> Result<(Complex64, f64)> {
    let a = spec.a;
    let b = spec.b();
    let ell = big_n.ln();
    let y = (a - 1.0) * ell;
    let mut acc = ComplexKahan::new();
    let mut ratio = Complex64::new(1.0, 0.0);
    for j in 1..=spec.n {
        ratio *= -b / (a - 1.0);
        let cj = binomial(spec.n as u64, j as u64)? as f64;
        acc.add(-ratio * cj * upper_gamma_q(j, y));
    }
    let psi_bound = big_n.max(73.2).sqrt() * ell * ell / (8.0 * PI);
    let slope = 1.0 + a.norm() / (a.re - 0.5);
    let err = 2.0 * psi_bound * eval_p_tilde(spec, big_n).norm() * slope * (1.0 + spec.n as f64 / ell);
    Ok((acc.value(), err))
}

/// Closed form of the compensated integral:
/// -(n b / 2)(gamma + psi(a/2)) + sum_{j>=2} C(n,j) (-1)^{j-1} (b/2)^j zeta(j, a/2).
pub fn compensated_closed(spec: &TestFunctionSpec) -> Result<Complex64> {
    let a = spec.a;
    let b = spec.b();
    let half = a * 0.5;
    let mut acc = -spec.midpoint() * (EULER_GAMMA + digamma(half)?);
    let mut pow = b * 0.5;
    for j in 2..=spec.n {
        pow *= b * 0.5;
        let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
        let cj = binomial(spec.n as u64, j as u64)? as f64;
        acc += pow * cj * sign * hurwitz_zeta(Complex64::new(j as f64, 0.0), half)?;
    }
    Ok(acc)
}

/// One row of the convergence report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationRow {
    pub eps: f64,
    pub s: Complex64,
    pub defect: Complex64,
    pub leading: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationReport {
    pub rows: Vec<TruncationRow>,
    /// (eps, sum_rho g^_{n,eps}(rho) - k_{n,a}) over the tabulated zeros.
    pub zero_defects: Vec<(f64, Complex64)>,
    /// Least-squares slope of ln(windowed RMS defect) against ln eps.
    pub empirical_exponent: Option<f64>,
}

pub const TRUNCATION_CSV_HEADER: &str = "eps,s_re,s_im,defect_re,defect_im,fitted_leading_re,fitted_leading_im";

impl TruncationReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(TRUNCATION_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:e},{},{},{:e},{:e},{:e},{:e}",
                r.eps, r.s.re, r.s.im, r.defect.re, r.defect.im, r.leading.re, r.leading.im
            );
        }
        out
    }
}

/// Number of consecutive schedule points pooled into one RMS value.
pub const EXPONENT_WINDOW: usize = 16;

/// Defects over an s grid and, if zeros are given, the decay of the zero-sum
/// defect as eps -> 0.
pub fn truncation_study(
    n: u32,
    a: Complex64,
    s_grid: &[Complex64],
    eps_schedule: &[f64],
    zeros: Option<&ZeroTable>,
) -> Result<TruncationReport> {
    if eps_schedule.is_empty() {
        return Err(Error::Domain("empty eps schedule".into()));
    }
    for w in eps_schedule.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::Domain("eps schedule must be strictly decreasing".into()));
        }
    }
    let mut rows = Vec::with_capacity(s_grid.len() * eps_schedule.len());
    for &eps in eps_schedule {
        let spec = TestFunctionSpec::new(n, a, eps)?;
        for &s in s_grid {
            rows.push(TruncationRow {
                eps,
                s,
                defect: truncation_defect(&spec, s)?,
                leading: defect_leading_term(&spec, s)?,
            });
        }
    }
    let mut zero_defects = Vec::new();
    if let Some(table) = zeros {
        for &eps in eps_schedule {
            let spec = TestFunctionSpec::new(n, a, eps)?;
            zero_defects.push((eps, zero_sum_defect(&spec, table)?));
        }
    }
    let empirical_exponent = if zero_defects.len() >= 2 * EXPONENT_WINDOW {
        let eps: Vec<f64> = zero_defects.iter().map(|p| p.0).collect();
        let mags: Vec<f64> = zero_defects.iter().map(|p| p.1.norm()).collect();
        empirical_exponent(&eps, &mags, EXPONENT_WINDOW)
    } else {
        None
    };
    Ok(TruncationReport { rows, zero_defects, empirical_exponent })
}

/// sum_rho g^_{n,eps}(rho) - sum_rho g^_n(rho) = -sum_rho defect(rho) over the
/// tabulated zeros, conjugates included. Above the table the defect terms
/// oscillate like eps^{i t} and are not modelled.
pub fn zero_sum_defect(spec: &TestFunctionSpec, table: &ZeroTable) -> Result<Complex64> {
    let ords = table.ordinates();
    let parts = map_chunks(ords.len(), |r| -> Result<ComplexKahan> {
        let mut acc = ComplexKahan::new();
        for &g in &ords[r] {
            for t in [g, -g] {
                acc.add(-truncation_defect(spec, Complex64::new(0.5, t))?);
            }
        }
        Ok(acc)
    });
    let mut total = ComplexKahan::new();
    for p in parts {
        total.merge(&p?);
    }
    Ok(total.value())
}

/// Slope of ln RMS(|defect|) against ln(eps), pooling `window` consecutive
/// points per RMS value to average out oscillation.
pub fn empirical_exponent(eps: &[f64], defects: &[f64], window: usize) -> Option<f64> {
    if window == 0 || eps.len() != defects.len() {
        return None;
    }
    let pts: Vec<(f64, f64)> = eps
        .chunks(window)
        .zip(defects.chunks(window))
        .filter(|(e, _)| e.len() == window)
        .map(|(e, d)| {
            let x = e.iter().map(|v| v.ln()).sum::<f64>() / window as f64;
            let rms = (d.iter().map(|v| v * v).sum::<f64>() / window as f64).sqrt();
            (x, rms.ln())
        })
        .filter(|p| p.1.is_finite())
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let np = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / np;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / np;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

/// Log-spaced decreasing schedule from `hi` down to `lo` with `count` points.
pub fn log_spaced(hi: f64, lo: f64, count: usize) -> Vec<f64> {
    if count < 2 {
        return vec![hi];
    }
    let (lh, ll) = (hi.ln(), lo.ln());
    (0..count).map(|i| (lh + (ll - lh) * i as f64 / (count - 1) as f64).exp()).collect()
}
