use super::constants::LN_PI;
use super::gamma::log_gamma_unchecked;
use super::zeta::{riemann_zeta, zeta_times_s_minus_one};
use num_complex::Complex64;

/// Completed zeta xi(z) = z (z - 1) pi^(-z/2) Gamma(z/2) zeta(z) / 2.
///
/// Arguments with `Re z < 1/2` are reflected through xi(z) = xi(1 - z). The
/// factor (z - 1) zeta(z) is evaluated directly, so z = 0 and z = 1 need no
/// special casing.
pub fn xi(z: Complex64) -> Complex64 {
    let w = if z.re < 0.5 { 1.0 - z } else { z };
    xi_unreflected(w)
}

pub(crate) fn xi_unreflected(z: Complex64) -> Complex64 {
    let half = z * 0.5;
    let gamma_part = (log_gamma_unchecked(half) - half * LN_PI).exp();
    half * gamma_part * zeta_times_s_minus_one(z)
}

/// Riemann-Siegel theta(t) = arg Gamma(1/4 + i t / 2) - (t / 2) ln pi, continuous in t.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    log_gamma_unchecked(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * LN_PI
}

/// Hardy's function Z(t) = exp(i theta(t)) zeta(1/2 + i t), real for real t.
pub fn hardy_z(t: f64) -> f64 {
    let z = riemann_zeta(Complex64::new(0.5, t)).expect("zeta is finite on the critical line");
    let th = riemann_siegel_theta(t);
    (Complex64::new(0.0, th).exp() * z).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn xi_special_values() {
        assert!((xi(c(0.0, 0.0)) - 0.5).norm() < 1e-15);
        assert!((xi(c(1.0, 0.0)) - 0.5).norm() < 1e-15);
        assert!((xi(c(0.5, 0.0)).re - 0.497_120_778_188_314_1).abs() < 1e-14);
        // xi(2) = pi / 6
        assert!((xi(c(2.0, 0.0)).re - std::f64::consts::PI / 6.0).abs() < 1e-14);
        assert!((xi(c(-1.0, 0.0)) - xi(c(2.0, 0.0))).norm() < 1e-15);
    }

    #[test]
    fn xi_vanishes_at_first_zero() {
        assert!(xi(c(0.5, 14.134_725_141_734_693)).norm() < 1e-15);
    }

    #[test]
    fn theta_and_hardy_z() {
        // theta(14.134725...) from an arbitrary-precision evaluation.
        let th = riemann_siegel_theta(14.134_725_141_734_693);
        assert!((th + 1.728_670_246_675_838).abs() < 1e-12, "{th}");
        assert!(hardy_z(14.134_725_141_734_693).abs() < 1e-13);
        assert!((hardy_z(0.0) - (-1.460_354_508_809_586_8)).abs() < 1e-13);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        // Direct evaluation (no reflection) on both sides of the critical line.
        #[test]
        fn functional_equation_in_strip(re in -1.5f64..2.5, im in -30.0f64..30.0) {
            let z = c(re, im);
            let lhs = xi_unreflected(z);
            let rhs = xi_unreflected(1.0 - z);
            let scale = lhs.norm().max(rhs.norm()).max(1e-300);
            prop_assert!((lhs - rhs).norm() <= 1e-11 * scale, "z = {z}: {lhs} vs {rhs}");
        }

        #[test]
        fn xi_is_real_on_real_axis_and_critical_line(x in -20.0f64..20.0, t in -40.0f64..40.0) {
            let v = xi(c(x, 0.0));
            prop_assert!(v.im.abs() <= 1e-14 * v.norm());
            let w = xi(c(0.5, t));
            prop_assert!(w.im.abs() <= 1e-12 * w.norm().max(1e-300));
        }
    }
}
