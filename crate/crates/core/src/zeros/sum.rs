use super::table::ZeroTable;
use crate::error::{Error, Result};
use crate::quad::tanh_sinh;
use crate::record::{params_digest, LiCoefficientRecord, Route};
use crate::specfun::{expm1, log1p};
use crate::sum::map_chunks;
use crate::sum::ComplexKahan;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Smallest height at which the smooth zero density is used.
pub const MIN_TAIL_HEIGHT: f64 = 50.0;
/// Minimum distance between a and any zero or reflected zero.
pub const GUARD_DISTANCE: f64 = 1e-6;

/// Which ratio is raised to the n-th power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// 1 - ((rho - a) / (rho + a - 1))^n
    Standard,
    /// 1 - ((rho + a - 1) / (rho - a))^n
    Swapped,
}

/// Zeros above `cutoff_height` are replaced by the density (1/2 pi) ln(t / 2 pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailModel {
    cutoff_height: f64,
}

impl TailModel {
    pub fn new(cutoff_height: f64) -> Result<Self> {
        if !(cutoff_height >= MIN_TAIL_HEIGHT) {
            return Err(Error::Domain(format!(
                "tail cutoff {cutoff_height} below the minimum {MIN_TAIL_HEIGHT}"
            )));
        }
        Ok(Self { cutoff_height })
    }

    /// Tail starting at the largest tabulated ordinate.
    pub fn for_table(table: &ZeroTable) -> Result<Self> {
        Self::new(table.max_height())
    }

    pub fn cutoff_height(&self) -> f64 {
        self.cutoff_height
    }
}

/// Tail integral with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub value: Complex64,
    pub error: f64,
}

/// 1 - ratio^n for one zero, via expm1/log1p so that large ordinates keep
/// full relative accuracy.
pub fn zero_term(n: u32, a: Complex64, rho: Complex64, orientation: Orientation) -> Complex64 {
    let b = 2.0 * a - 1.0;
    let w = match orientation {
        Orientation::Standard => -b / (rho + a - 1.0),
        Orientation::Swapped => b / (rho - a),
    };
    -expm1(log1p(w) * n as f64)
}

fn pair(n: u32, a: Complex64, t: f64, orientation: Orientation) -> Complex64 {
    zero_term(n, a, Complex64::new(0.5, t), orientation) + zero_term(n, a, Complex64::new(0.5, -t), orientation)
}

fn guard(a: Complex64, gamma: f64) -> Result<()> {
    for rho in [Complex64::new(0.5, gamma), Complex64::new(0.5, -gamma)] {
        let d = (a - rho).norm().min((a - (1.0 - rho)).norm());
        if d < GUARD_DISTANCE {
            return Err(Error::TooCloseToZero { ordinate: gamma, distance: d });
        }
    }
    Ok(())
}

/// Sum over the tabulated zeros, each paired with its conjugate, in
/// ascending ordinate order. Returns the sum and the sum of term magnitudes.
pub fn paired_zero_sum(n: u32, a: Complex64, ordinates: &[f64], orientation: Orientation) -> Result<(Complex64, f64)> {
    for &g in ordinates {
        guard(a, g)?;
    }
    let partials = map_chunks(ordinates.len(), |r| {
        let mut acc = ComplexKahan::new();
        let mut mag = 0.0;
        for &g in &ordinates[r] {
            let p = pair(n, a, g, orientation);
            acc.add(p);
            mag += p.norm();
        }
        (acc, mag)
    });
    let mut total = ComplexKahan::new();
    let mut mag = 0.0;
    for (p, m) in &partials {
        total.merge(p);
        mag += m;
    }
    Ok((total.value(), mag))
}

/// Contribution of zeros above T from the smooth density:
/// int_T^inf [f(1/2+it) + f(1/2-it)] (1/2 pi) ln(t / 2 pi) dt.
///
/// The full paired integrand is integrated (not only its leading 1/t^2
/// part, which has the same order as the first correction). The error
/// estimate covers the quadrature and the discreteness of the actual zeros
/// near T, bounded by a few times the integrand at T.
pub fn tail_correction(n: u32, a: Complex64, cutoff: f64) -> Result<TailEstimate> {
    if !(cutoff >= MIN_TAIL_HEIGHT) {
        return Err(Error::Domain(format!("tail cutoff {cutoff} below the minimum {MIN_TAIL_HEIGHT}")));
    }
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    // Substitute t = T / v, v in (0, 1].
    let f = |v: f64, _d: f64| -> Complex64 {
        let t = cutoff / v;
        if !(t < 1e150) {
            return Complex64::new(0.0, 0.0);
        }
        let density = (t / (2.0 * PI)).ln() / (2.0 * PI);
        pair(n, a, t, Orientation::Standard) * (density * t / v)
    };
    let q = tanh_sinh(f, 0.0, 1.0, 1e-12)?;
    let boundary = pair(n, a, cutoff, Orientation::Standard).norm();
    Ok(TailEstimate { value: q.value, error: q.error + 3.0 * boundary })
}

/// k_{n,a} as the explicit zero sum plus tail.
pub fn k_zero_sum(n: u32, a: Complex64, table: &ZeroTable, tail: &TailModel) -> Result<LiCoefficientRecord> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    if tail.cutoff_height() < table.max_height() {
        return Err(Error::Domain(format!(
            "tail cutoff {} lies below the largest tabulated ordinate {}",
            tail.cutoff_height(),
            table.max_height()
        )));
    }
    let (sum, mag) = paired_zero_sum(n, a, table.ordinates(), Orientation::Standard)?;
    let t = tail_correction(n, a, tail.cutoff_height())?;
    Ok(LiCoefficientRecord {
        n,
        a,
        route: Route::ZeroSum,
        value: sum + t.value,
        uncertainty: t.error + 4.0 * f64::EPSILON * (mag + t.value.norm()),
        params_digest: params_digest(&[
            ("route", Route::ZeroSum.to_string()),
            ("n", n.to_string()),
            ("a", format!("{},{}", a.re, a.im)),
            ("zeros", format!("{}:{}:{}", table.source, table.len(), table.max_height())),
            ("tail", tail.cutoff_height().to_string()),
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
    fn term_matches_direct_power() {
        let a = Complex64::new(1.3, 0.4);
        let rho = Complex64::new(0.5, 21.022);
        let direct = 1.0 - ((rho - a) / (rho + a - 1.0)).powi(7);
        assert!((zero_term(7, a, rho, Orientation::Standard) - direct).norm() < 1e-14);
    }

    #[test]
    fn empty_table_is_tail_only() {
        let t = ZeroTable::from_ordinates(vec![], "empty").unwrap();
        let tail = TailModel::new(60.0).unwrap();
        let r = k_zero_sum(2, c(2.0), &t, &tail).unwrap();
        let only = tail_correction(2, c(2.0), 60.0).unwrap();
        assert_eq!(r.value, only.value);
    }

    #[test]
    fn tail_rejects_low_cutoff() {
        assert!(tail_correction(1, c(2.0), 49.0).is_err());
        assert!(TailModel::new(10.0).is_err());
    }

    #[test]
    fn guard_distance() {
        let t = ZeroTable::bundled();
        let tail = TailModel::for_table(&t).unwrap();
        let a = Complex64::new(0.5, 14.134_725_141_734_693 + 1e-8);
        assert!(matches!(k_zero_sum(1, a, &t, &tail), Err(Error::TooCloseToZero { .. })));
    }

    #[test]
    fn tail_decays_like_inverse_height() {
        // Leading behaviour: n^2 b^2 (ln(T/2pi) + 1) / (2 pi T).
        let (n, a) = (3u32, 2.0);
        let b = 2.0 * a - 1.0;
        for t in [1e4, 1e5] {
            let v = tail_correction(n, c(a), t).unwrap().value.re;
            let lead = (n * n) as f64 * b * b * ((t / (2.0 * PI)).ln() + 1.0) / (2.0 * PI * t);
            assert!((v / lead - 1.0).abs() < 2e-3, "T = {t}: {v} vs {lead}");
        }
    }
}
