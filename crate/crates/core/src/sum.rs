//! Compensated summation and deterministic chunked reductions.
//!
//! Parallel sums are split into fixed-size chunks; each chunk is reduced
//! independently and the partials are combined in chunk order, so the
//! result does not depend on the number of worker threads.

use num_complex::Complex64;
use rayon::prelude::*;
use std::ops::Range;

/// Chunk length used by all parallel reductions.
pub const CHUNK: usize = 1 << 15;

/// Kahan-Babuska (Neumaier) compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn merge(&mut self, other: &KahanSum) {
        self.add(other.sum);
        self.add(other.comp);
    }
}

/// Compensated complex sum (independent real and imaginary accumulators).
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexKahan {
    re: KahanSum,
    im: KahanSum,
}

impl ComplexKahan {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn merge(&mut self, other: &ComplexKahan) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }
}

/// Compensated sum of a real sequence.
pub fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = KahanSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Evaluates `f` on consecutive chunks of `0..len` in parallel and returns
/// the per-chunk results in chunk order.
pub fn map_chunks<P, F>(len: usize, f: F) -> Vec<P>
where
    P: Send,
    F: Fn(Range<usize>) -> P + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| f(c * CHUNK..((c + 1) * CHUNK).min(len)))
        .collect()
}

/// Deterministic parallel compensated sum of `term(i)` over `0..len`.
pub fn ordered_sum<F>(len: usize, term: F) -> ComplexKahan
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let partials = map_chunks(len, |r| {
        let mut acc = ComplexKahan::new();
        for i in r {
            acc.add(term(i));
        }
        acc
    });
    let mut total = ComplexKahan::new();
    for p in &partials {
        total.merge(p);
    }
    total
}
