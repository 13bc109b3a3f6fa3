use super::table::ZeroTable;
use crate::specfun::{hardy_z, riemann_zeta};
use num_complex::Complex64;

/// One ordinate whose zeta residual exceeded the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroFailure {
    pub index: usize,
    pub ordinate: f64,
    pub residual: f64,
}

/// Outcome of [`verify_zero_table`].
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub count: usize,
    pub tolerance: f64,
    pub max_residual: f64,
    pub failures: Vec<ZeroFailure>,
    /// Indices whose bracketing midpoints show no sign change of Z(t).
    pub sign_change_failures: Vec<usize>,
}

impl VerificationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty() && self.sign_change_failures.is_empty()
    }
}

/// Checks |zeta(1/2 + i gamma)| <= tol for every ordinate, and that Hardy's
/// Z changes sign between the points bracketing each zero (midpoints to the
/// neighbours; a quarter gap outward at the ends).
pub fn verify_zero_table(table: &ZeroTable, tol: f64) -> VerificationReport {
    let g = table.ordinates();
    let mut failures = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (i, &t) in g.iter().enumerate() {
        let r = riemann_zeta(Complex64::new(0.5, t)).map(|z| z.norm()).unwrap_or(f64::INFINITY);
        max_residual = max_residual.max(r);
        if r > tol {
            failures.push(ZeroFailure { index: i, ordinate: t, residual: r });
        }
    }
    let mut sign_change_failures = Vec::new();
    if !g.is_empty() {
        let bracket: Vec<f64> = (0..=g.len())
            .map(|k| {
                if g.len() == 1 {
                    if k == 0 { g[0] - 0.25 } else { g[0] + 0.25 }
                } else if k == 0 {
                    g[0] - 0.25 * (g[1] - g[0])
                } else if k == g.len() {
                    g[k - 1] + 0.25 * (g[k - 1] - g[k - 2])
                } else {
                    0.5 * (g[k - 1] + g[k])
                }
            })
            .collect();
        let z: Vec<f64> = bracket.iter().map(|&t| hardy_z(t)).collect();
        for i in 0..g.len() {
            if z[i] * z[i + 1] >= 0.0 {
                sign_change_failures.push(i);
            }
        }
    }
    VerificationReport { count: g.len(), tolerance: tol, max_residual, failures, sign_change_failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_verifies() {
        let r = verify_zero_table(&ZeroTable::bundled(), 1e-9);
        assert!(r.is_ok(), "{r:?}");
        assert!(r.max_residual < 1e-10);
    }

    #[test]
    fn perturbed_ordinate_is_flagged() {
        let t = ZeroTable::from_ordinates(vec![14.134_725_141_734_693 + 0.01], "t").unwrap();
        let r = verify_zero_table(&t, 1e-3);
        assert_eq!(r.failures.len(), 1);
        assert!(r.failures[0].residual > 1e-3);
        let ok = ZeroTable::from_ordinates(vec![14.134_725_141_734_693], "t").unwrap();
        let r = verify_zero_table(&ok, 1e-9);
        assert!(r.is_ok() && r.max_residual <= 1e-9);
    }

    #[test]
    fn missing_zero_breaks_sign_pattern() {
        let g = ZeroTable::bundled().ordinates().to_vec();
        let mut gapped = g.clone();
        gapped.remove(5);
        let r = verify_zero_table(&ZeroTable::from_ordinates(gapped, "t").unwrap(), 1e-9);
        assert!(!r.sign_change_failures.is_empty());
    }
}
