use crate::error::{Error, Result};
use num_complex::Complex64;

/// Largest n for which [`binomial`] is supported.
pub const MAX_BINOMIAL_N: u64 = 62;

/// Exact binomial coefficient C(n, j); zero for j > n.
pub fn binomial(n: u64, j: u64) -> Result<u64> {
    if n > MAX_BINOMIAL_N {
        return Err(Error::Overflow { n, max: MAX_BINOMIAL_N });
    }
    if j > n {
        return Ok(0);
    }
    let j = j.min(n - j);
    let mut acc: u128 = 1;
    for i in 0..j {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    Ok(acc as u64)
}

/// ln C(n, j) for any n, j <= n.
pub fn ln_binomial(n: u64, j: u64) -> f64 {
    let lg = |x: u64| super::log_gamma_unchecked(Complex64::new(x as f64 + 1.0, 0.0)).re;
    lg(n) - lg(j) - lg(n - j)
}

/// Generalized Laguerre polynomial L^(1)_m(x).
pub fn laguerre_l1(m: u32, x: f64) -> f64 {
    laguerre_l1_complex(m, Complex64::new(x, 0.0)).re
}

/// L^(1)_m at a complex argument, by the three-term recurrence
/// (k + 1) L_{k+1} = (2k + 2 - x) L_k - (k + 1) L_{k-1}.
pub fn laguerre_l1_complex(m: u32, x: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if m == 0 {
        return prev;
    }
    let mut cur = 2.0 - x;
    for k in 1..m {
        let kf = k as f64;
        let next = ((2.0 * kf + 2.0 - x) * cur - (kf + 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(4, 5).unwrap(), 0);
        assert_eq!(binomial(62, 31).unwrap(), 465_428_353_255_261_088);
        assert!(matches!(binomial(63, 1), Err(Error::Overflow { .. })));
    }

    #[test]
    fn pascal_rule() {
        for n in 1..=62u64 {
            for j in 1..=n {
                let lhs = binomial(n, j).unwrap();
                let rhs = binomial(n - 1, j - 1).unwrap() + binomial(n - 1, j).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn ln_binomial_matches_exact() {
        let exact = (binomial(60, 25).unwrap() as f64).ln();
        assert!((ln_binomial(60, 25) - exact).abs() < 1e-12);
    }

    #[test]
    fn laguerre_values() {
        assert_eq!(laguerre_l1(1, 3.0), -1.0);
        assert_eq!(laguerre_l1(2, 0.0), 3.0);
        // L^(1)_m(0) = m + 1
        for m in 0..30 {
            assert!((laguerre_l1(m, 0.0) - (m + 1) as f64).abs() < 1e-12);
        }
        // Explicit sum: L^(1)_m(x) = sum_i C(m+1, m-i) (-x)^i / i!
        let x: f64 = 1.7;
        for m in 0..20u64 {
            let mut s = 0.0;
            let mut fact = 1.0;
            for i in 0..=m {
                if i > 0 {
                    fact *= i as f64;
                }
                s += binomial(m + 1, m - i).unwrap() as f64 * (-x).powi(i as i32) / fact;
            }
            assert!((laguerre_l1(m as u32, x) - s).abs() < 1e-11 * s.abs().max(1.0));
        }
    }
}
