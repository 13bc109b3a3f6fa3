use genli::mangoldt::{build_mangoldt_table, weighted_partial_sum, MangoldtTable};
use genli::specfun::{hurwitz_zeta, log_gamma, xi, zeta_log_derivative};
use genli::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;
use std::sync::OnceLock;

fn table() -> &'static MangoldtTable {
    static T: OnceLock<MangoldtTable> = OnceLock::new();
    T.get_or_init(|| build_mangoldt_table(1_000_000).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gamma_reflection(re in -8.0f64..8.0, im in -8.0f64..8.0) {
        let z = Complex64::new(re, im);
        prop_assume!((re - re.round()).abs() > 1e-3 || im.abs() > 1e-3);
        let lhs = (log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap()).exp();
        let rhs = PI / (z * PI).sin();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm(), "{} {}", lhs, rhs);
    }

    // q in the range the routes use (q = a/2 with moderate Im a).
    #[test]
    fn hurwitz_recurrence(sre in 1.2f64..8.0, sim in -10.0f64..10.0, qre in 0.1f64..5.0, qim in -1.0f64..1.0) {
        let s = Complex64::new(sre, sim);
        let q = Complex64::new(qre, qim);
        let lhs = hurwitz_zeta(s, q).unwrap();
        let rhs = hurwitz_zeta(s, q + 1.0).unwrap() + (-s * q.ln()).exp();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(rhs.norm()), "{} {}", lhs, rhs);
    }

    #[test]
    fn xi_functional_equation_wide(r in 0.0f64..30.0, phi in 0.0f64..(2.0 * PI)) {
        let z = Complex64::from_polar(r, phi);
        let (x, y) = (xi(z), xi(1.0 - z));
        prop_assert!((x - y).norm() <= 1e-10 * (1.0 + x.norm()), "{} {} at {}", x, y, z);
    }

    #[test]
    fn dirichlet_series_consistency(s in 2.0f64..5.0) {
        let n = table().limit() as f64;
        let partial = weighted_partial_sum(table(), Complex64::new(s, 0.0), 1, table().limit()).unwrap();
        let direct = -zeta_log_derivative(Complex64::new(s, 0.0)).unwrap();
        let bound = n.powf(1.0 - s) * (n.ln() + 1.0) / (s - 1.0) + 8.0 * f64::EPSILON * direct.norm();
        prop_assert!((partial - direct).norm() <= bound, "{} {} {}", partial, direct, bound);
    }
}
