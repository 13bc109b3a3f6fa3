//! Generates the ordinates of the first N nontrivial zeta zeros.
//!
//! Zeros are isolated as sign changes of Hardy's Z function between Gram
//! points. Each Gram block (between consecutive good Gram points) must hold
//! as many zeros as it spans Gram intervals; blocks that appear short are
//! resampled on finer grids until the count matches. Roots are refined with
//! Brent's method.
//!
//! Usage: gen-zeros <count> <output-file>

use genli::specfun::{hardy_z, riemann_siegel_theta};
use std::f64::consts::PI;
use std::io::Write;

fn gram_point(n: i64, guess: f64) -> f64 {
    let target = n as f64 * PI;
    let mut t = guess;
    for _ in 0..60 {
        let d = 0.5 * (t / (2.0 * PI)).ln();
        let step = (riemann_siegel_theta(t) - target) / d;
        t -= step;
        if step.abs() < 1e-13 * t {
            break;
        }
    }
    t
}

fn brent(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    assert!(fa * fb < 0.0, "root not bracketed");
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 1e-15;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return b;
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    b
}

struct Gram {
    points: Vec<f64>,
    values: Vec<f64>,
}

impl Gram {
    // Index 0 holds g_{-1}.
    fn ensure(&mut self, idx: usize) {
        while self.points.len() <= idx {
            let n = self.points.len() as i64 - 1;
            let guess = match self.points.last() {
                Some(&g) => g + PI / (0.5 * (g / (2.0 * PI)).ln()),
                None => 9.7,
            };
            let g = gram_point(n, guess);
            self.points.push(g);
            self.values.push(hardy_z(g));
        }
    }

    fn good(&mut self, idx: usize) -> bool {
        self.ensure(idx);
        let n = idx as i64 - 1;
        let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        sign * self.values[idx] > 0.0
    }
}

fn block_zeros(lo: f64, hi: f64, grams: &[(f64, f64)], expected: usize) -> Vec<f64> {
    let mut samples: Vec<(f64, f64)> = grams.to_vec();
    for level in 0..12 {
        let brackets: Vec<_> = samples
            .windows(2)
            .filter(|w| w[0].1 * w[1].1 < 0.0)
            .map(|w| (w[0], w[1]))
            .collect();
        if brackets.len() == expected {
            return brackets
                .into_iter()
                .map(|((a, fa), (b, fb))| brent(hardy_z, a, b, fa, fb))
                .collect();
        }
        if brackets.len() > expected {
            panic!("block [{lo}, {hi}] has {} sign changes, expected {expected}", brackets.len());
        }
        let _ = level;
        let mut refined = Vec::with_capacity(samples.len() * 2);
        for w in samples.windows(2) {
            refined.push(w[0]);
            let mid = 0.5 * (w[0].0 + w[1].0);
            refined.push((mid, hardy_z(mid)));
        }
        refined.push(*samples.last().unwrap());
        samples = refined;
    }
    panic!("could not isolate {expected} zeros in Gram block [{lo}, {hi}]");
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 3 {
        eprintln!("usage: gen-zeros <count> <output-file>");
        std::process::exit(2);
    }
    let count: usize = args[1].parse().expect("count must be a positive integer");
    let path = &args[2];

    let mut gram = Gram { points: Vec::new(), values: Vec::new() };
    let mut zeros: Vec<f64> = Vec::with_capacity(count + 8);
    let mut i = 0usize;
    assert!(gram.good(0), "g_-1 is expected to be a good Gram point");
    while zeros.len() < count {
        let mut j = i + 1;
        while !gram.good(j) {
            j += 1;
        }
        let grams: Vec<(f64, f64)> = (i..=j).map(|k| (gram.points[k], gram.values[k])).collect();
        let found = block_zeros(gram.points[i], gram.points[j], &grams, j - i);
        zeros.extend(found);
        i = j;
        if zeros.len() % 1000 < (j - i + 1) {
            eprint!("\r{} zeros", zeros.len());
        }
    }
    eprintln!();
    zeros.truncate(count);
    for w in zeros.windows(2) {
        assert!(w[1] > w[0], "ordinates out of order near {}", w[0]);
    }

    let mut out = std::io::BufWriter::new(std::fs::File::create(path).expect("create output"));
    writeln!(out, "# Imaginary parts of the first {count} nontrivial zeros of zeta, ascending.").unwrap();
    writeln!(out, "# Isolated by Gram blocks of Hardy's Z function and refined to ~1e-12.").unwrap();
    for z in &zeros {
        writeln!(out, "{z:.12}").unwrap();
    }
}
