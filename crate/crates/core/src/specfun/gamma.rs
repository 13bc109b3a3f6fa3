use super::constants::{BERNOULLI_EVEN, LN_2PI};
use crate::error::{Error, Result};
use num_complex::Complex64;

const SHIFT_RE: f64 = 10.0;
const SHIFT_IM: f64 = 20.0;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

// Arguments close to the negative real axis, or with small modulus, are
// shifted right until the asymptotic series is accurate.
fn needs_shift(z: Complex64) -> bool {
    z.re < SHIFT_RE && (z.im.abs() < SHIFT_IM || z.re < 0.0)
}

/// Principal branch of ln Gamma(z), continuous off the negative real axis.
///
/// ```
/// use genli::specfun::log_gamma;
/// use num_complex::Complex64;
/// let v = log_gamma(Complex64::new(5.0, 0.0)).unwrap();
/// assert!((v.re - 24f64.ln()).abs() < 1e-13);
/// ```
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { at: z });
    }
    Ok(log_gamma_unchecked(z))
}

pub(crate) fn log_gamma_unchecked(mut z: Complex64) -> Complex64 {
    let mut shift = Complex64::new(0.0, 0.0);
    while needs_shift(z) {
        shift += z.ln();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for (k, b) in BERNOULLI_EVEN.iter().take(10).enumerate() {
        let k = (k + 1) as f64;
        series += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * LN_2PI + series - shift
}

/// Digamma psi(z) = Gamma'(z) / Gamma(z).
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { at: z });
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while needs_shift(z) {
        shift += z.inv();
        z += 1.0;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for (k, b) in BERNOULLI_EVEN.iter().take(10).enumerate() {
        series += pow * (b / (2.0 * (k + 1) as f64));
        pow *= inv2;
    }
    Ok(z.ln() - 0.5 * inv - series - shift)
}
