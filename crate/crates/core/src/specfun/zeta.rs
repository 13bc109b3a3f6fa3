use super::constants::bernoulli_over_factorial;
use crate::error::{Error, Result};
use crate::sum::ComplexKahan;
use num_complex::Complex64;

const EM_CORRECTIONS: usize = 12;

/// Threshold on |zeta(s)| below which the logarithmic derivative is refused.
pub const NEAR_ZERO_THRESHOLD: f64 = 1e-10;

/// Euler-Maclaurin decomposition zeta(s, q) = a(s) + p(s) / (s - 1) with
/// p(s) = X^(1-s), X = q + terms. Derivatives in s are carried alongside.
struct EmParts {
    a: Complex64,
    da: Complex64,
    p: Complex64,
    dp: Complex64,
}

fn direct_terms(s: Complex64) -> usize {
    let by_im = (s.im.abs() / 2.0).ceil() as usize + 10;
    let by_re = (s.re.abs() / 2.0).ceil() as usize + 10;
    by_im.max(by_re).max(10)
}

fn euler_maclaurin(s: Complex64, q: Complex64, terms: usize, derivative: bool) -> EmParts {
    let mut head = ComplexKahan::new();
    let mut dhead = ComplexKahan::new();
    for k in 0..terms {
        let lx = (q + k as f64).ln();
        let t = (-s * lx).exp();
        head.add(t);
        if derivative {
            dhead.add(-lx * t);
        }
    }
    let x = q + terms as f64;
    let lx = x.ln();
    let xs = (-s * lx).exp();
    let p = xs * x;
    let mut a = head.value() + xs * 0.5;
    let mut da = dhead.value() - lx * xs * 0.5;
    // Corrections B_{2l}/(2l)! (s)_{2l-1} X^{1-s-2l}.
    let mut poch = s;
    let mut dpoch = Complex64::new(1.0, 0.0);
    let mut xpow = xs / x;
    let x2inv = (x * x).inv();
    for l in 1..=EM_CORRECTIONS {
        let c = bernoulli_over_factorial(l);
        a += poch * xpow * c;
        if derivative {
            da += (dpoch - lx * poch) * xpow * c;
        }
        for i in [2 * l - 1, 2 * l] {
            dpoch = dpoch * (s + i as f64) + poch;
            poch *= s + i as f64;
        }
        xpow *= x2inv;
    }
    EmParts { a, da, p, dp: -lx * p }
}

fn is_one(s: Complex64) -> bool {
    s.re == 1.0 && s.im == 0.0
}

/// Riemann zeta function, accurate for `Re s >= -2` at moderate height.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    if is_one(s) {
        return Err(Error::Pole { at: s });
    }
    let em = euler_maclaurin(s, Complex64::new(1.0, 0.0), direct_terms(s), false);
    Ok(em.a + em.p / (s - 1.0))
}

/// (s - 1) zeta(s), entire; evaluated without forming the pole.
pub fn zeta_times_s_minus_one(s: Complex64) -> Complex64 {
    let em = euler_maclaurin(s, Complex64::new(1.0, 0.0), direct_terms(s), false);
    em.a * (s - 1.0) + em.p
}

/// zeta(s) and zeta'(s).
pub fn zeta_and_derivative(s: Complex64) -> Result<(Complex64, Complex64)> {
    if is_one(s) {
        return Err(Error::Pole { at: s });
    }
    let em = euler_maclaurin(s, Complex64::new(1.0, 0.0), direct_terms(s), true);
    let inv = (s - 1.0).inv();
    let z = em.a + em.p * inv;
    let dz = em.da + em.dp * inv - em.p * inv * inv;
    Ok((z, dz))
}

/// zeta'(s) / zeta(s). Refused near zeros of zeta.
pub fn zeta_log_derivative(s: Complex64) -> Result<Complex64> {
    let (z, dz) = zeta_and_derivative(s)?;
    if z.norm() < NEAR_ZERO_THRESHOLD {
        return Err(Error::NearZetaZero { s, modulus: z.norm() });
    }
    Ok(dz / z)
}

/// Hurwitz zeta(s, q) = sum_{k >= 0} (k + q)^(-s) for `Re s > 1`, `Re q > 0`.
pub fn hurwitz_zeta(s: Complex64, q: Complex64) -> Result<Complex64> {
    if s.re <= 1.0 {
        return Err(Error::Domain(format!("hurwitz_zeta needs Re s > 1, got s = {s}")));
    }
    if q.re <= 0.0 {
        return Err(Error::Domain(format!("hurwitz_zeta needs Re q > 0, got q = {q}")));
    }
    let terms = direct_terms(s).max((q.im.abs() / 2.0).ceil() as usize + 10);
    let em = euler_maclaurin(s, q, terms, false);
    Ok(em.a + em.p / (s - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zeta_special_values() {
        assert!((riemann_zeta(c(2.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-15);
        assert!((riemann_zeta(c(0.0, 0.0)).unwrap().re + 0.5).abs() < 1e-15);
        assert!((riemann_zeta(c(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-13);
        assert!(matches!(riemann_zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn zeta_against_brute_force_sum() {
        let n = 1_000_000u64;
        let mut acc = crate::sum::KahanSum::new();
        for k in (1..=n).rev() {
            acc.add(1.0 / (k as f64).powi(2));
        }
        let nf = n as f64;
        let oracle = acc.value() + 1.0 / nf - 0.5 / (nf * nf) + 1.0 / (6.0 * nf * nf * nf);
        assert!((riemann_zeta(c(2.0, 0.0)).unwrap().re - oracle).abs() < 1e-12);
    }

    #[test]
    fn zeta_near_first_zero() {
        let rho = c(0.5, 14.134_725_141_734_693);
        assert!(riemann_zeta(rho).unwrap().norm() < 1e-13);
        assert!(matches!(zeta_log_derivative(rho), Err(Error::NearZetaZero { .. })));
    }

    #[test]
    fn zeta_log_derivative_at_two() {
        let v = zeta_log_derivative(c(2.0, 0.0)).unwrap();
        assert!((v.re + 0.569_960_993_094_532_8).abs() < 1e-14);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let s = c(0.3, 7.0);
        let h = 1e-5;
        let fd = (riemann_zeta(s + h).unwrap() - riemann_zeta(s - h).unwrap()) / (2.0 * h);
        let (_, d) = zeta_and_derivative(s).unwrap();
        assert!((fd - d).norm() < 1e-9);
    }

    #[test]
    fn pole_free_product_near_one() {
        assert!((zeta_times_s_minus_one(c(1.0, 0.0)) - 1.0).norm() < 1e-15);
        let s = c(1.0 + 1e-9, 0.0);
        let v = zeta_times_s_minus_one(s);
        assert!((v.re - (1.0 + super::super::EULER_GAMMA * 1e-9)).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_reductions() {
        let v = hurwitz_zeta(c(2.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v.re - PI * PI / 2.0).abs() < 1e-14);
        let v = hurwitz_zeta(c(2.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((v.re - (PI * PI / 6.0 - 1.0)).abs() < 1e-15);
        for j in 2..=40 {
            let s = c(j as f64, 0.0);
            let lhs = hurwitz_zeta(s, c(0.5, 0.0)).unwrap().re;
            let rhs = (2f64.powi(j) - 1.0) * riemann_zeta(s).unwrap().re;
            assert!((lhs - rhs).abs() <= 1e-13 * rhs, "j = {j}");
        }
        assert!(hurwitz_zeta(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(hurwitz_zeta(c(2.0, 0.0), c(-1.0, 0.0)).is_err());
    }
}
