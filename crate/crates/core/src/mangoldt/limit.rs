//! Regularized limits D_j(a) = lim_N [ S_j(N) - int_1^N x^{-a} ln^{j-1}x dx ].
//!
//! Two summation methods are offered. `Sharp` is the literal cutoff at
//! m <= N. Its error is of size N^{1/2-a} times powers of ln N and grows
//! quickly with j, so it only serves low orders. `LogGaussian` replaces the
//! cutoff by the weight w(m/N) = erfc(ln(m/N) / (sigma sqrt 2)) / 2, whose
//! Mellin transform exp(sigma^2 s^2 / 2) / s damps the contribution of each
//! nontrivial zero by exp(-sigma^2 gamma^2 / 2). The pole at s = 0 and the
//! trivial zeros leave closed-form terms that are subtracted exactly, so
//! each checkpoint is accurate to near rounding level for moderate N.
//!
//! Values are produced for all orders j <= jmax at once, normalized by
//! (j-1)! so that large orders stay in range.

use super::sieve::MangoldtTable;
use super::sums::log_power_normalized_all;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::quad::gl_composite_with;
use crate::sum::{map_chunks, ComplexKahan};
use num_complex::Complex64;

/// Default width of the log-Gaussian weight.
pub const DEFAULT_SMOOTHING_WIDTH: f64 = 0.6;
/// Default number of checkpoints averaged into the reported value.
pub const DEFAULT_WINDOW: usize = 8;
/// The weight is treated as exactly 1 (0) beyond this many widths below (above) the center.
const WEIGHT_REACH: f64 = 9.0;
// Bound on accumulated rounding relative to the sum of term magnitudes.
const ROUNDING_FACTOR: f64 = 4.0 * f64::EPSILON;

/// How the partial sums are truncated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Summation {
    Sharp,
    LogGaussian { width: f64 },
}

impl Summation {
    /// Largest m that contributes to a checkpoint at `n`.
    pub fn reach(&self, n: f64) -> f64 {
        match *self {
            Summation::Sharp => n,
            Summation::LogGaussian { width } => n * (WEIGHT_REACH * width).exp(),
        }
    }
}

impl Default for Summation {
    fn default() -> Self {
        Summation::LogGaussian { width: DEFAULT_SMOOTHING_WIDTH }
    }
}

/// Checkpoints N_1 < N_2 < ... and the number of trailing checkpoints averaged.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitSchedule {
    pub checkpoints: Vec<f64>,
    pub averaging_window: usize,
    pub summation: Summation,
}

impl LimitSchedule {
    pub fn new(checkpoints: Vec<f64>, averaging_window: usize, summation: Summation) -> Result<Self> {
        if averaging_window == 0 || averaging_window > checkpoints.len() {
            return Err(Error::Domain(format!(
                "averaging window {averaging_window} must be in 1..={}",
                checkpoints.len()
            )));
        }
        if checkpoints.windows(2).any(|w| w[1] <= w[0]) || checkpoints.first().is_some_and(|&c| c < 2.0) {
            return Err(Error::Domain("checkpoints must be ascending and at least 2".into()));
        }
        if let Summation::LogGaussian { width } = summation {
            if !(width > 0.0 && width <= 2.0) {
                return Err(Error::Domain(format!("smoothing width {width} outside (0, 2]")));
            }
        }
        Ok(Self { checkpoints, averaging_window, summation })
    }

    /// Geometric checkpoints n0 * ratio^k, k = 0..count.
    pub fn geometric(n0: f64, ratio: f64, count: usize, window: usize, summation: Summation) -> Result<Self> {
        let cps = (0..count).map(|k| n0 * ratio.powi(k as i32)).collect();
        Self::new(cps, window, summation)
    }

    /// The schedule used by default for a table: 2 * window checkpoints whose
    /// largest reaches exactly the table limit. Sharp cutoffs step by 2,
    /// smoothed ones by sqrt 2 (the smoothing already spans a wide range).
    pub fn fitted(table_limit: u64, summation: Summation, window: usize) -> Result<Self> {
        let count = 2 * window;
        let (top, ratio) = match summation {
            Summation::Sharp => (table_limit as f64, 2.0),
            Summation::LogGaussian { width } => {
                (table_limit as f64 / (WEIGHT_REACH * width).exp(), std::f64::consts::SQRT_2)
            }
        };
        // Small tables get a tighter ratio rather than a bottom below 16.
        let ratio = ratio.min((top / 16.0).powf(1.0 / (count as f64 - 1.0)));
        if !(ratio >= 1.05) {
            return Err(Error::Domain(format!(
                "table limit {table_limit} too small for a {count}-checkpoint schedule"
            )));
        }
        let bottom = top / ratio.powi(count as i32 - 1);
        Self::geometric(bottom, ratio, count, window, summation)
    }

    fn check_table(&self, table: &MangoldtTable) -> Result<()> {
        let last = *self.checkpoints.last().expect("schedule is non-empty");
        let reach = self.summation.reach(last);
        if reach > table.limit() as f64 * (1.0 + 1e-12) {
            return Err(Error::CutoffExceedsTable { cutoff: reach.ceil() as u64, limit: table.limit() });
        }
        Ok(())
    }
}

/// A limit estimate with its uncertainty.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitEstimate {
    pub value: Complex64,
    pub uncertainty: f64,
    /// Value at every checkpoint, for diagnostics.
    pub trajectory: Vec<Complex64>,
}

/// D_j(a) for one order j.
pub fn regularized_limit(table: &MangoldtTable, a: Complex64, j: u32, schedule: &LimitSchedule) -> Result<LimitEstimate> {
    if j == 0 {
        return Err(Error::Domain("j must be at least 1".into()));
    }
    let mut all = regularized_limits(table, a, j as usize, schedule)?;
    Ok(all.pop().expect("jmax entries"))
}

/// D_j(a) for j = 1..=jmax (index j - 1).
pub fn regularized_limits(table: &MangoldtTable, a: Complex64, jmax: usize, schedule: &LimitSchedule) -> Result<Vec<LimitEstimate>> {
    let normalized = normalized_limits(table, a, jmax, schedule)?;
    let mut fact = 1.0;
    Ok(normalized
        .into_iter()
        .enumerate()
        .map(|(i, mut e)| {
            if i > 0 {
                fact *= i as f64;
            }
            e.value *= fact;
            e.uncertainty *= fact;
            for v in &mut e.trajectory {
                *v *= fact;
            }
            e
        })
        .collect())
}

/// D_j(a) / (j-1)! for j = 1..=jmax.
pub fn normalized_limits(table: &MangoldtTable, a: Complex64, jmax: usize, schedule: &LimitSchedule) -> Result<Vec<LimitEstimate>> {
    if jmax == 0 {
        return Ok(Vec::new());
    }
    if a.re <= 0.5 {
        return Err(Error::Domain(format!("regularized limits need Re a > 1/2, got {a}")));
    }
    schedule.check_table(table)?;
    let grid = checkpoint_values(table, a, jmax, schedule);
    let k = schedule.checkpoints.len();
    let w = schedule.averaging_window;
    let mut out = Vec::with_capacity(jmax);
    for j in 0..jmax {
        let traj: Vec<Complex64> = grid.iter().map(|cp| cp.value[j]).collect();
        let last = &traj[k - w..];
        let mean = last.iter().sum::<Complex64>() / w as f64;
        let rounding = grid[k - w..].iter().map(|cp| cp.rounding[j]).fold(0.0, f64::max);
        let spread_last = spread(last);
        if k >= 2 * w {
            let spread_prev = spread(&traj[k - 2 * w..k - w]);
            if spread_last > spread_prev && spread_last > 4.0 * rounding {
                return Err(Error::NonConvergence(format!(
                    "order {}: checkpoint spread grew from {spread_prev:e} to {spread_last:e}",
                    j + 1
                )));
            }
        }
        out.push(LimitEstimate { value: mean, uncertainty: spread_last + rounding, trajectory: traj });
    }
    Ok(out)
}

fn spread(v: &[Complex64]) -> f64 {
    let (mut lo_r, mut hi_r, mut lo_i, mut hi_i) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for z in v {
        lo_r = lo_r.min(z.re);
        hi_r = hi_r.max(z.re);
        lo_i = lo_i.min(z.im);
        hi_i = hi_i.max(z.im);
    }
    (hi_r - lo_r).hypot(hi_i - lo_i)
}

struct Checkpoint {
    value: Vec<Complex64>,
    rounding: Vec<f64>,
}

struct Partial {
    sums: Vec<ComplexKahan>,
    abs: Vec<f64>,
}

fn checkpoint_values(table: &MangoldtTable, a: Complex64, jmax: usize, schedule: &LimitSchedule) -> Vec<Checkpoint> {
    let k = schedule.checkpoints.len();
    let centers: Vec<f64> = schedule.checkpoints.iter().map(|n| n.ln()).collect();
    let (width, smoothed) = match schedule.summation {
        Summation::Sharp => (0.0, false),
        Summation::LogGaussian { width } => (width, true),
    };
    let reach: Vec<f64> = schedule.checkpoints.iter().map(|&n| schedule.summation.reach(n)).collect();
    let max_reach = reach.iter().cloned().fold(0.0, f64::max);
    let end = table.entries().partition_point(|e| (e.m as f64) <= max_reach);
    let entries = &table.entries()[..end];
    let inv = 1.0 / (width * std::f64::consts::SQRT_2);

    let partials = map_chunks(entries.len(), |r| {
        let mut p = Partial { sums: vec![ComplexKahan::new(); k * jmax], abs: vec![0.0; k * jmax] };
        let mut pow = vec![0.0; jmax];
        for e in &entries[r] {
            let mf = e.m as f64;
            let u = mf.ln();
            let base = (-a * u).exp() * e.log_p;
            let bn = base.norm();
            pow[0] = 1.0;
            for i in 1..jmax {
                pow[i] = pow[i - 1] * u / i as f64;
            }
            for c in 0..k {
                if mf > reach[c] {
                    continue;
                }
                let w = if !smoothed {
                    1.0
                } else {
                    let x = (u - centers[c]) * inv;
                    if x < -WEIGHT_REACH / std::f64::consts::SQRT_2 {
                        1.0
                    } else {
                        0.5 * libm::erfc(x)
                    }
                };
                let tw = base * w;
                let twn = bn * w;
                let row = c * jmax;
                for i in 0..jmax {
                    p.sums[row + i].add(tw * pow[i]);
                    p.abs[row + i] += twn * pow[i];
                }
            }
        }
        p
    });
    let mut sums = vec![ComplexKahan::new(); k * jmax];
    let mut abs = vec![0.0; k * jmax];
    for p in &partials {
        for i in 0..k * jmax {
            sums[i].merge(&p.sums[i]);
            abs[i] += p.abs[i];
        }
    }

    (0..k)
        .map(|c| {
            let n = schedule.checkpoints[c];
            let integral = if smoothed {
                smoothed_integral(a, jmax, centers[c], width)
            } else {
                log_power_normalized_all(1.0 - a, n.ln(), jmax)
            };
            let trivial = if smoothed { trivial_zero_terms(a, jmax, centers[c], width) } else { vec![Complex64::new(0.0, 0.0); jmax] };
            let mut value = Vec::with_capacity(jmax);
            let mut rounding = Vec::with_capacity(jmax);
            for i in 0..jmax {
                let s = sums[c * jmax + i].value();
                value.push(s - integral[i] - trivial[i]);
                rounding.push(ROUNDING_FACTOR * (abs[c * jmax + i] + integral[i].norm() + trivial[i].norm()));
            }
            Checkpoint { value, rounding }
        })
        .collect()
}

/// (1/(j-1)!) int_1^inf x^{-a} ln^{j-1}x w(x/N) dx by composite Gauss-Legendre in u = ln x.
fn smoothed_integral(a: Complex64, jmax: usize, center: f64, width: f64) -> Vec<Complex64> {
    let upper = center + WEIGHT_REACH * width;
    let panels = ((upper / 0.25).ceil() as usize).max(8);
    let c = 1.0 - a;
    let inv = 1.0 / (width * std::f64::consts::SQRT_2);
    let mut acc = vec![ComplexKahan::new(); jmax];
    let mut pow = vec![0.0; jmax];
    gl_composite_with(0.0, upper, panels, |u, wt| {
        let w = 0.5 * libm::erfc((u - center) * inv);
        let f = (c * u).exp() * (w * wt);
        pow[0] = 1.0;
        for i in 1..jmax {
            pow[i] = pow[i - 1] * u / i as f64;
        }
        for i in 0..jmax {
            acc[i].add(f * pow[i]);
        }
    });
    acc.iter().map(|s| s.value()).collect()
}

/// Residues of the smoothed explicit formula at the trivial zeros s = -2k,
/// T_k(a) = N^{-(2k+a)} exp(sigma^2 (2k+a)^2 / 2) / (2k + a), expanded in a and
/// mapped to the normalized orders: entry j-1 holds (-1)^{j-1} [d^{j-1}] sum_k T_k.
fn trivial_zero_terms(a: Complex64, jmax: usize, center: f64, width: f64) -> Vec<Complex64> {
    let s2 = width * width;
    let mut total = Jet(vec![Complex64::new(0.0, 0.0); jmax]);
    let mut prev_mag = f64::INFINITY;
    for kk in 1..200 {
        let y = 2.0 * kk as f64 + a;
        let q0 = -y * center + 0.5 * s2 * y * y;
        // Asymptotic series: stop once terms are negligible or start to grow.
        if q0.re > prev_mag || q0.re < -80.0 {
            break;
        }
        prev_mag = q0.re;
        let mut q = Jet::affine(q0, s2 * y - center, jmax);
        if jmax > 2 {
            q.0[2] = Complex64::new(0.5 * s2, 0.0);
        }
        let term = q.exp().div_affine(y);
        total.add_assign(&term);
    }
    total
        .0
        .into_iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { v } else { -v })
        .collect()
}
