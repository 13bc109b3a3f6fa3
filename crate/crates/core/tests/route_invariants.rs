use genli::arith::{first_order_identity, k_arith_batch, k_arith_supercritical, ArithOptions};
use genli::mangoldt::{build_mangoldt_table, regularized_limits, LimitSchedule, MangoldtTable, Summation, DEFAULT_WINDOW};
use genli::specfun::xi;
use genli::xi_route::ln_xi_taylor_auto;
use genli::zeros::{k_zero_sum, load_zero_table, paired_zero_sum, Orientation, TailModel, ZeroFormat, ZeroTable};
use genli::Complex64;
use proptest::prelude::*;
use std::sync::OnceLock;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn table() -> &'static MangoldtTable {
    static T: OnceLock<MangoldtTable> = OnceLock::new();
    T.get_or_init(|| build_mangoldt_table(10_000_000).unwrap())
}

fn zeros() -> &'static ZeroTable {
    static Z: OnceLock<ZeroTable> = OnceLock::new();
    Z.get_or_init(|| {
        let p = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/zeros_10000.txt");
        load_zero_table(&p, ZeroFormat::PlainOrdinates).unwrap()
    })
}

#[test]
fn chebyshev_psi_at_ten_million() {
    let n = 10_000_000;
    let r = table().chebyshev_psi(n).unwrap() / n as f64;
    assert!((r - 1.0).abs() < 0.03, "{r}");
}

#[test]
fn real_parameters_give_real_values() {
    let ns: Vec<u32> = (1..=30).collect();
    for a in [0.75, 0.9, 1.0, 2.0, 3.0] {
        for r in k_arith_batch(&ns, c(a), table(), &ArithOptions::default()).unwrap() {
            assert!(r.value.im.abs() <= r.uncertainty, "a = {a}, n = {}: {}", r.n, r.value);
        }
    }
}

#[test]
fn first_order_web() {
    let tail = TailModel::for_table(zeros()).unwrap();
    for a in [1.5, 2.0, 3.0] {
        let k = k_arith_supercritical(1, c(a), table(), &ArithOptions::default()).unwrap();
        let r = first_order_identity(c(a), table(), zeros(), &tail, &ArithOptions::default()).unwrap();
        let rhs = r.rhs * (2.0 * a - 1.0);
        assert!((k.value - rhs).norm() <= 1e-12 * rhs.norm(), "{} {}", k.value, rhs);
    }
}

#[test]
fn paired_sums_are_exactly_real() {
    for a in [0.75, 2.0, 3.0] {
        for n in [1, 7, 30] {
            let (s, _) = paired_zero_sum(n, c(a), zeros().ordinates(), Orientation::Standard).unwrap();
            assert_eq!(s.im, 0.0, "a = {a}, n = {n}");
        }
    }
}

#[test]
fn orientation_swap_gives_same_sum() {
    // On the critical line 1 - rho is the conjugate of rho, so inverting the
    // ratio only permutes the paired terms.
    for a in [Complex64::new(0.75, 0.0), Complex64::new(2.0, 0.5)] {
        for n in [1, 4, 9] {
            let (s, m) = paired_zero_sum(n, a, zeros().ordinates(), Orientation::Standard).unwrap();
            let (t, _) = paired_zero_sum(n, a, zeros().ordinates(), Orientation::Swapped).unwrap();
            assert!((s - t).norm() <= 1e-12 * m, "{s} {t}");
        }
    }
}

#[test]
fn tail_handoff_improves_with_prefix_size() {
    let full_tail = TailModel::for_table(zeros()).unwrap();
    for (n, a) in [(1, 2.0), (5, 2.0), (3, 0.75)] {
        let full = k_zero_sum(n, c(a), zeros(), &full_tail).unwrap().value;
        let mut prev = f64::INFINITY;
        for m in [100, 1000, 5000, 10_000] {
            let prefix = zeros().prefix(m);
            let tail = TailModel::for_table(&prefix).unwrap();
            let d = (k_zero_sum(n, c(a), &prefix, &tail).unwrap().value - full).norm();
            assert!(d < prev || d == 0.0, "n = {n}, a = {a}, M = {m}: {d} after {prev}");
            prev = d;
        }
    }
}

#[test]
fn first_coefficient_matches_finite_difference() {
    let h = 1e-5;
    for center in [c(-1.0), c(0.0), Complex64::new(-0.5, 0.3)] {
        let s = ln_xi_taylor_auto(center, 4).unwrap();
        let fd = ((xi(center + h) / xi(center - h)).ln()) / (2.0 * h);
        assert!((s.coefficients[0] - fd).norm() < 1e-6, "{center}: {} {fd}", s.coefficients[0]);
    }
}

#[test]
fn limit_uncertainty_follows_error_model() {
    let t8 = build_mangoldt_table(100_000_000).unwrap();
    let n = t8.limit() as f64;
    let sched = LimitSchedule::fitted(t8.limit(), Summation::default(), DEFAULT_WINDOW).unwrap();
    for a in [0.75, 0.9, 1.0, 2.0] {
        let lims = regularized_limits(&t8, c(a), 6, &sched).unwrap();
        for (i, l) in lims.iter().enumerate() {
            let j = i as i32 + 1;
            let model = n.powf(0.5 - a) * n.ln().powi(j);
            assert!(l.uncertainty <= 5.0 * model, "a = {a}, j = {j}: {} vs {model}", l.uncertainty);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complex_parameter_routes_agree(re in 1.3f64..3.0, im in -1.0f64..1.0, n in 1u32..8) {
        let a = Complex64::new(re, im);
        let tail = TailModel::for_table(zeros()).unwrap();
        let z = k_zero_sum(n, a, zeros(), &tail).unwrap();
        let ar = k_arith_batch(&[n], a, table(), &ArithOptions::default()).unwrap().remove(0);
        prop_assert!((z.value - ar.value).norm() <= z.uncertainty + ar.uncertainty, "{:?} {:?}", z, ar);
    }

    #[test]
    fn conjugate_parameter_conjugates_value(re in 1.3f64..3.0, im in 0.1f64..1.0, n in 1u32..10) {
        let a = Complex64::new(re, im);
        let x = k_arith_batch(&[n], a, table(), &ArithOptions::default()).unwrap().remove(0);
        let y = k_arith_batch(&[n], a.conj(), table(), &ArithOptions::default()).unwrap().remove(0);
        prop_assert!((x.value - y.value.conj()).norm() <= 1e-12 * x.value.norm().max(1.0));
    }
}
