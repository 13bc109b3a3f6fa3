use num_complex::Complex64;

/// ln(1 + z), accurate for small |z|.
pub fn log1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-2 {
        // Alternating series; |z|^12 / 12 is below double precision here.
        let mut term = z;
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=14 {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            acc += term * (sign / k as f64);
            term *= z;
        }
        acc
    } else {
        (Complex64::new(1.0, 0.0) + z).ln()
    }
}

/// exp(z) - 1, accurate for small |z|.
pub fn expm1(z: Complex64) -> Complex64 {
    if z.norm() < 1e-2 {
        let mut term = z;
        let mut acc = z;
        for k in 2..=12 {
            term = term * z / k as f64;
            acc += term;
        }
        acc
    } else {
        z.exp() - 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arguments_agree_with_direct_forms() {
        for &z in &[Complex64::new(3e-3, -4e-3), Complex64::new(-9e-3, 1e-4)] {
            assert!((log1p(z) - (1.0 + z).ln()).norm() < 1e-15);
            assert!((expm1(z) - (z.exp() - 1.0)).norm() < 1e-15);
        }
        let tiny = Complex64::new(1e-12, 2e-12);
        assert!((log1p(tiny) - tiny).norm() < 1e-23);
        assert!((expm1(tiny) - tiny).norm() < 1e-23);
    }
}
