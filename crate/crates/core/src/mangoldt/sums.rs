use super::sieve::MangoldtTable;
use crate::error::{Error, Result};
use crate::sum::{map_chunks, ComplexKahan};
use num_complex::Complex64;

/// sum_{m <= cutoff} Lambda(m) ln^{j-1}(m) m^{-a}, compensated, ascending m.
pub fn weighted_partial_sum(table: &MangoldtTable, a: Complex64, j: u32, cutoff: u64) -> Result<Complex64> {
    if j == 0 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    let entries = table.entries_up_to(cutoff)?;
    let partials = map_chunks(entries.len(), |r| {
        let mut acc = ComplexKahan::new();
        for e in &entries[r] {
            let u = (e.m as f64).ln();
            acc.add((-a * u).exp() * (e.log_p * u.powi(j as i32 - 1)));
        }
        acc
    });
    let mut total = ComplexKahan::new();
    for p in &partials {
        total.merge(p);
    }
    Ok(total.value())
}

/// (1/(j-1)!) int_0^ell u^{j-1} e^{c u} du for j = 1..=jmax.
///
/// The upward recurrence is used while it is stable (j <= |c| ell); beyond
/// that a positive-term series is summed, choosing the form whose terms do
/// not alternate for the sign of Re(c).
pub fn log_power_normalized_all(c: Complex64, ell: f64, jmax: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(jmax);
    let z = c * ell;
    if c == Complex64::new(0.0, 0.0) {
        let mut t = 1.0;
        for j in 1..=jmax {
            t *= ell / j as f64;
            out.push(Complex64::new(t, 0.0));
        }
        return out;
    }
    let stable = (z.norm().floor() as usize).min(jmax);
    let ecl = z.exp();
    // Recurrence N_j = (e^{c ell} ell^{j-1}/(j-1)! - N_{j-1}) / c, N_0 = 1.
    let mut prev = Complex64::new(1.0, 0.0);
    let mut pow = 1.0;
    for j in 1..=stable {
        if j > 1 {
            pow *= ell / (j - 1) as f64;
        }
        let v = (ecl * pow - prev) / c;
        out.push(v);
        prev = v;
    }
    for j in (stable + 1)..=jmax {
        out.push(series(z, ell, j));
    }
    out
}

fn series(z: Complex64, ell: f64, j: usize) -> Complex64 {
    // ell^j / j! as the common scale.
    let mut scale = 1.0;
    for i in 1..=j {
        scale *= ell / i as f64;
    }
    let mut acc = ComplexKahan::new();
    if z.re > 0.0 {
        // sum_k z^k j! / (k! (k + j) (j-1)!) * ell^j / j!  =  ell^j sum z^k / (k! (k+j)) / (j-1)!
        let mut term = Complex64::new(1.0, 0.0);
        for k in 0..2000 {
            if k > 0 {
                term *= z / k as f64;
            }
            let contrib = term * (j as f64 / (k + j) as f64);
            acc.add(contrib);
            if k > z.norm() as usize && contrib.norm() < 1e-18 * acc.value().norm() {
                break;
            }
        }
        acc.value() * scale
    } else {
        // ell^j e^z sum_k (-z)^k / ((j)(j+1)...(j+k)) / (j-1)!
        let w = -z;
        let mut term = Complex64::new(1.0, 0.0);
        for k in 0..4000 {
            if k > 0 {
                term *= w / (j + k) as f64;
            }
            acc.add(term);
            if k > w.norm() as usize && term.norm() < 1e-18 * acc.value().norm() {
                break;
            }
        }
        acc.value() * z.exp() * scale
    }
}

/// int_1^upper x^{-a} ln^{j-1}(x) dx.
pub fn log_power_integral(a: Complex64, j: u32, upper: f64) -> Result<Complex64> {
    if j == 0 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    if upper < 1.0 {
        return Err(Error::Domain(format!("upper limit {upper} below 1")));
    }
    let norm = log_power_normalized_all(1.0 - a, upper.ln(), j as usize)[j as usize - 1];
    let mut fact = 1.0;
    for i in 1..j {
        fact *= i as f64;
    }
    Ok(norm * fact)
}
