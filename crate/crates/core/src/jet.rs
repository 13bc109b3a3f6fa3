//! Truncated Taylor series ("jets") in one complex variable.

use num_complex::Complex64;

/// Coefficients `c[i]` of `sum c[i] * d^i`, truncated at a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet(pub Vec<Complex64>);

impl Jet {
    /// The jet of the affine function `c0 + c1 * d`.
    pub fn affine(c0: Complex64, c1: Complex64, len: usize) -> Jet {
        let mut v = vec![Complex64::new(0.0, 0.0); len];
        if len > 0 {
            v[0] = c0;
        }
        if len > 1 {
            v[1] = c1;
        }
        Jet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// exp of the jet, via the recurrence for `f' = q' f`.
    pub fn exp(&self) -> Jet {
        let q = &self.0;
        let n = q.len();
        let mut f = vec![Complex64::new(0.0, 0.0); n];
        if n == 0 {
            return Jet(f);
        }
        f[0] = q[0].exp();
        for i in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 1..=i {
                acc += q[l] * f[i - l] * l as f64;
            }
            f[i] = acc / i as f64;
        }
        Jet(f)
    }

    /// Division by the affine jet `y0 + d`.
    pub fn div_affine(&self, y0: Complex64) -> Jet {
        let mut g = vec![Complex64::new(0.0, 0.0); self.len()];
        for i in 0..self.len() {
            let prev = if i > 0 { g[i - 1] } else { Complex64::new(0.0, 0.0) };
            g[i] = (self.0[i] - prev) / y0;
        }
        Jet(g)
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let n = self.len().min(other.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for k in 0..=i {
                out[i] += self.0[k] * other.0[i - k];
            }
        }
        Jet(out)
    }

    pub fn add_assign(&mut self, other: &Jet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn exp_of_linear_matches_taylor() {
        let j = Jet::affine(c(0.5), c(2.0), 8).exp();
        let mut fact = 1.0;
        for (i, v) in j.0.iter().enumerate() {
            if i > 0 {
                fact *= i as f64;
            }
            let expect = 0.5f64.exp() * 2f64.powi(i as i32) / fact;
            assert!((v.re - expect).abs() < 1e-13 * expect);
        }
    }

    #[test]
    fn division_inverts_multiplication() {
        let f = Jet(vec![c(1.0), c(-2.0), c(0.5), c(3.0)]);
        let y = Jet::affine(c(1.5), c(1.0), 4);
        let back = f.div_affine(c(1.5)).mul(&y);
        for (a, b) in back.0.iter().zip(&f.0) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
