//! Xi-derivative route: Taylor coefficients of ln xi by contour sampling.
//!
//! With w = z - (1 - a) and ln xi(z) = sum_m c_m w^m,
//!
//! k_{n,a} = ((1 - 2a) / (n-1)!) d^n/dz^n [(z - a)^{n-1} ln xi(z)] at z = 1 - a
//!         = (1 - 2a) n sum_{m=1}^n C(n-1, m-1) (-(2a - 1))^{m-1} c_m.

use crate::error::{Error, Result};
use crate::record::{params_digest, LiCoefficientRecord, Route};
use crate::specfun::{binomial, xi, MAX_BINOMIAL_N};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Ordinate of the lowest nontrivial zero.
pub const FIRST_ZERO_ORDINATE: f64 = 14.134_725_141_734_693;
/// Largest radius used by default.
pub const MAX_DEFAULT_RADIUS: f64 = 5.0;

/// Taylor coefficients c_1..c_count of ln xi about `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct LnXiTaylorSeries {
    pub center: Complex64,
    pub radius: f64,
    pub sample_count: usize,
    /// c_m at index m - 1.
    pub coefficients: Vec<Complex64>,
    /// Error bound for each coefficient.
    pub errors: Vec<f64>,
}

/// Distance from `center` to the region 0 <= Re z <= 1, |Im z| >= first zero
/// ordinate, which contains every nontrivial zero.
pub fn zero_clearance(center: Complex64) -> f64 {
    let dx = if center.re < 0.0 {
        -center.re
    } else if center.re > 1.0 {
        center.re - 1.0
    } else {
        0.0
    };
    let dy = (FIRST_ZERO_ORDINATE - center.im.abs()).max(0.0);
    dx.hypot(dy)
}

/// min(5, half the zero clearance).
pub fn default_radius(center: Complex64) -> f64 {
    MAX_DEFAULT_RADIUS.min(0.5 * zero_clearance(center))
}

/// Default number of contour samples: 16 per coefficient, a power of two, at least 64.
pub fn default_samples(count: usize) -> usize {
    (16 * count).next_power_of_two().max(64)
}

/// Samples ln xi on the circle |z - center| = radius with a continuous
/// branch and extracts coefficients by a discrete Fourier transform.
pub fn ln_xi_taylor(center: Complex64, radius: f64, count: usize, samples: usize) -> Result<LnXiTaylorSeries> {
    let bound = 0.5 * zero_clearance(center);
    if !(radius > 0.0) || radius > bound {
        return Err(Error::RadiusTooLarge { radius, bound });
    }
    if count == 0 || samples < 2 * count + 2 {
        return Err(Error::Domain(format!("{samples} samples cannot resolve {count} coefficients")));
    }
    let k = samples;
    let mut logs = Vec::with_capacity(k);
    let mut prev_arg = 0.0;
    let mut first_arg = 0.0;
    for i in 0..=k {
        let theta = 2.0 * PI * (i % k) as f64 / k as f64;
        let z = center + Complex64::from_polar(radius, theta);
        let v = xi(z);
        if v.norm() == 0.0 || !v.norm().is_finite() {
            return Err(Error::Domain(format!("xi vanishes or overflows on the contour at {z}")));
        }
        let mut arg = v.arg();
        if i > 0 {
            arg += 2.0 * PI * ((prev_arg - arg) / (2.0 * PI)).round();
        } else {
            first_arg = arg;
        }
        prev_arg = arg;
        if i < k {
            logs.push(Complex64::new(v.norm().ln(), arg));
        } else {
            let turns = (arg - first_arg) / (2.0 * PI);
            if turns.abs() > 0.5 {
                return Err(Error::WindingMismatch { turns });
            }
        }
    }
    let max_log = logs.iter().map(|l| l.norm()).fold(0.0, f64::max);
    let dft = |m: usize| -> Complex64 {
        let mut acc = crate::sum::ComplexKahan::new();
        for (i, l) in logs.iter().enumerate() {
            let phase = -2.0 * PI * ((m * i) % k) as f64 / k as f64;
            acc.add(l * Complex64::from_polar(1.0, phase));
        }
        acc.value() / k as f64
    };
    // Bins around k/2 measure aliasing plus rounding.
    let floor = (k / 2 - 4..=k / 2).map(|m| dft(m).norm()).fold(0.0, f64::max) + 16.0 * f64::EPSILON * max_log;
    let mut coefficients = Vec::with_capacity(count);
    let mut errors = Vec::with_capacity(count);
    let mut rpow = 1.0;
    for m in 1..=count {
        rpow *= radius;
        coefficients.push(dft(m) / rpow);
        errors.push(floor / rpow);
    }
    Ok(LnXiTaylorSeries { center, radius, sample_count: k, coefficients, errors })
}

/// Series with the default radius and sample count.
pub fn ln_xi_taylor_auto(center: Complex64, count: usize) -> Result<LnXiTaylorSeries> {
    ln_xi_taylor(center, default_radius(center), count, default_samples(count))
}

impl LnXiTaylorSeries {
    /// Radius of convergence suggested by the decay of the upper half of the
    /// coefficients.
    pub fn decay_radius(&self) -> Option<f64> {
        let n = self.coefficients.len();
        if n < 8 {
            return None;
        }
        let scaled: Vec<f64> = self.coefficients.iter().enumerate().map(|(i, c)| (i + 1) as f64 * c.norm()).collect();
        // Upper envelope: local maxima of m |c_m| well above the noise floor.
        let pts: Vec<(f64, f64)> = (n / 2..n - 1)
            .filter(|&i| scaled[i] >= scaled[i - 1] && scaled[i] >= scaled[i + 1])
            .filter(|&i| self.coefficients[i].norm() > 1e3 * self.errors[i])
            .map(|i| ((i + 1) as f64, scaled[i].ln()))
            .collect();
        if pts.len() < 3 {
            return None;
        }
        let np = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / np;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / np;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        Some((-sxy / sxx).exp())
    }
}

/// k_{n,a} from a series centered at 1 - a.
pub fn k_xi(n: u32, a: Complex64, series: &LnXiTaylorSeries) -> Result<LiCoefficientRecord> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if (series.center - (1.0 - a)).norm() > 1e-12 {
        return Err(Error::Domain(format!("series centered at {} but 1 - a = {}", series.center, 1.0 - a)));
    }
    if series.coefficients.len() < n as usize {
        return Err(Error::InsufficientCoefficients { have: series.coefficients.len(), need: n as usize });
    }
    if n as u64 - 1 > MAX_BINOMIAL_N {
        return Err(Error::Overflow { n: n as u64 - 1, max: MAX_BINOMIAL_N });
    }
    let b = 2.0 * a - 1.0;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut mag = 0.0;
    let mut pow = Complex64::new(1.0, 0.0);
    for m in 1..=n as usize {
        let c = binomial(n as u64 - 1, m as u64 - 1)? as f64;
        let t = pow * c * series.coefficients[m - 1];
        acc += t;
        mag += t.norm();
        err += pow.norm() * c * series.errors[m - 1];
        pow *= -b;
    }
    let pref = (1.0 - 2.0 * a) * n as f64;
    Ok(LiCoefficientRecord {
        n,
        a,
        route: Route::XiDeriv,
        value: pref * acc,
        uncertainty: pref.norm() * (err + 4.0 * f64::EPSILON * mag),
        params_digest: params_digest(&[
            ("route", Route::XiDeriv.to_string()),
            ("n", n.to_string()),
            ("a", format!("{},{}", a.re, a.im)),
            ("radius", series.radius.to_string()),
            ("samples", series.sample_count.to_string()),
        ]),
        conditional: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn classical_li_values() {
        let s = ln_xi_taylor_auto(c(0.0), 8).unwrap();
        let expect = [0.023_095_708_966_121_0, 0.092_345_735_228_046_7, 0.207_638_920_554_324_8];
        for (i, e) in expect.iter().enumerate() {
            let r = k_xi(i as u32 + 1, c(1.0), &s).unwrap();
            assert!((r.value.re - e).abs() < 1e-12, "n = {}: {}", i + 1, r.value.re);
            assert!(r.uncertainty < 1e-11);
        }
    }

    #[test]
    fn shifted_parameter_values() {
        let s = ln_xi_taylor_auto(c(-1.0), 20).unwrap();
        let expect = [(1, 0.207_198_694_590_002_1), (2, 0.825_835_545_260_228_5), (3, 1.847_134_762_758_984_3), (5, 5.035_531_085_541_631_8)];
        for (n, e) in expect {
            let r = k_xi(n, c(2.0), &s).unwrap();
            assert!((r.value.re - e).abs() < 1e-10 * e, "n = {n}: {}", r.value.re);
            assert!(r.value.im.abs() < 1e-12);
        }
        let r = k_xi(20, c(2.0), &s).unwrap();
        assert!(r.uncertainty < 1e-6 * r.value.norm(), "{r:?}");
    }

    #[test]
    fn symmetric_center_has_only_even_coefficients() {
        let s = ln_xi_taylor_auto(c(0.5), 12).unwrap();
        for m in (1..=12).step_by(2) {
            assert!(s.coefficients[m - 1].norm() < 1e-13, "c_{m} = {}", s.coefficients[m - 1]);
        }
        assert!(s.coefficients[1].norm() > 1e-3);
    }

    #[test]
    fn functional_equation_flips_first_coefficient() {
        for a in [0.75, 2.0, 3.0] {
            let s1 = ln_xi_taylor_auto(c(1.0 - a), 4).unwrap();
            let s2 = ln_xi_taylor_auto(c(a), 4).unwrap();
            assert!((s1.coefficients[0] + s2.coefficients[0]).norm() < 1e-13);
        }
    }

    #[test]
    fn decay_matches_zero_distance() {
        let s = ln_xi_taylor_auto(c(0.5), 28).unwrap();
        let r = s.decay_radius().unwrap();
        assert!((r / FIRST_ZERO_ORDINATE - 1.0).abs() < 0.1, "{r}");
    }

    #[test]
    fn radius_and_coefficient_checks() {
        assert!(matches!(ln_xi_taylor(c(0.5), 8.0, 4, 64), Err(Error::RadiusTooLarge { .. })));
        let s = ln_xi_taylor_auto(c(-1.0), 3).unwrap();
        assert!(matches!(k_xi(4, c(2.0), &s), Err(Error::InsufficientCoefficients { have: 3, need: 4 })));
        assert!(k_xi(2, c(2.5), &s).is_err());
    }
}
