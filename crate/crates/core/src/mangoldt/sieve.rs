use crate::error::{Error, Result};
use rayon::prelude::*;

/// Largest supported sieve limit.
pub const SIEVE_CAPACITY: u64 = 1 << 40;

const SEGMENT: u64 = 1 << 18;

/// One prime power m = p^k with log_p = ln p.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MangoldtEntry {
    pub m: u64,
    pub log_p: f64,
}

/// All prime powers m <= limit, ascending, with Lambda(m) = ln p.
#[derive(Debug, Clone, PartialEq)]
pub struct MangoldtTable {
    pub(crate) limit: u64,
    pub(crate) entries: Vec<MangoldtEntry>,
}

fn small_primes(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Sieves all prime powers up to `limit` with a segmented sieve.
///
/// ```
/// let t = genli::mangoldt::build_mangoldt_table(100).unwrap();
/// assert_eq!(t.len(), 35);
/// ```
pub fn build_mangoldt_table(limit: u64) -> Result<MangoldtTable> {
    if limit < 2 {
        return Err(Error::Domain(format!("sieve limit must be at least 2, got {limit}")));
    }
    if limit > SIEVE_CAPACITY {
        return Err(Error::Capacity { limit, cap: SIEVE_CAPACITY });
    }
    let base = small_primes(isqrt(limit));
    // Higher powers p^k, k >= 2, sorted.
    let mut powers: Vec<MangoldtEntry> = Vec::new();
    for &p in &base {
        let lp = (p as f64).ln();
        let mut q = p;
        while let Some(next) = q.checked_mul(p).filter(|&v| v <= limit) {
            powers.push(MangoldtEntry { m: next, log_p: lp });
            q = next;
        }
    }
    powers.sort_by_key(|e| e.m);

    let segments = (limit - 1).div_ceil(SEGMENT);
    let parts: Vec<Vec<MangoldtEntry>> = (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = 2 + s * SEGMENT;
            let hi = (lo + SEGMENT - 1).min(limit);
            let mut composite = vec![false; (hi - lo + 1) as usize];
            for &p in &base {
                if p * p > hi {
                    break;
                }
                let start = (p * p).max(lo.div_ceil(p) * p);
                let mut j = start;
                while j <= hi {
                    composite[(j - lo) as usize] = true;
                    j += p;
                }
            }
            let first_pow = powers.partition_point(|e| e.m < lo);
            let mut pw = powers[first_pow..].iter().take_while(|e| e.m <= hi).peekable();
            let mut out = Vec::new();
            for (off, &c) in composite.iter().enumerate() {
                let m = lo + off as u64;
                if !c {
                    out.push(MangoldtEntry { m, log_p: (m as f64).ln() });
                } else if pw.peek().is_some_and(|e| e.m == m) {
                    out.push(*pw.next().unwrap());
                }
            }
            out
        })
        .collect();
    let total = parts.iter().map(Vec::len).sum();
    let mut entries = Vec::with_capacity(total);
    for p in parts {
        entries.extend(p);
    }
    Ok(MangoldtTable { limit, entries })
}

impl MangoldtTable {
    /// Builds a table from raw parts, checking ordering only.
    pub fn from_entries(limit: u64, entries: Vec<MangoldtEntry>) -> Result<Self> {
        if entries.windows(2).any(|w| w[1].m <= w[0].m) || entries.last().is_some_and(|e| e.m > limit) {
            return Err(Error::Domain("entries must be strictly ascending and within the limit".into()));
        }
        Ok(Self { limit, entries })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn entries(&self) -> &[MangoldtEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lambda(m): ln p if m is a power of the prime p, else 0.
    pub fn lambda(&self, m: u64) -> Result<f64> {
        if m > self.limit {
            return Err(Error::CutoffExceedsTable { cutoff: m, limit: self.limit });
        }
        Ok(match self.entries.binary_search_by_key(&m, |e| e.m) {
            Ok(i) => self.entries[i].log_p,
            Err(_) => 0.0,
        })
    }

    /// Entries with m <= cutoff.
    pub fn entries_up_to(&self, cutoff: u64) -> Result<&[MangoldtEntry]> {
        if cutoff > self.limit {
            return Err(Error::CutoffExceedsTable { cutoff, limit: self.limit });
        }
        let end = self.entries.partition_point(|e| e.m <= cutoff);
        Ok(&self.entries[..end])
    }

    /// Chebyshev psi(x) = sum_{m <= x} Lambda(m).
    pub fn chebyshev_psi(&self, x: u64) -> Result<f64> {
        Ok(crate::sum::kahan_sum(self.entries_up_to(x)?.iter().map(|e| e.log_p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_lambda(m: u64) -> f64 {
        if m < 2 {
            return 0.0;
        }
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                let mut r = m;
                while r % p == 0 {
                    r /= p;
                }
                return if r == 1 { (p as f64).ln() } else { 0.0 };
            }
            p += 1;
        }
        (m as f64).ln()
    }

    #[test]
    fn small_table() {
        let t = build_mangoldt_table(100).unwrap();
        assert_eq!(t.len(), 35);
        let psi10 = t.chebyshev_psi(10).unwrap();
        assert!((psi10 - 2520f64.ln()).abs() < 1e-14);
        assert!(matches!(build_mangoldt_table(1), Err(Error::Domain(_))));
        assert!(matches!(build_mangoldt_table(SIEVE_CAPACITY + 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn matches_trial_division_across_segments() {
        let limit = 2 * SEGMENT + 12_345;
        let t = build_mangoldt_table(limit).unwrap();
        let mut k = 0;
        for m in 1..=limit {
            let l = trial_lambda(m);
            if l > 0.0 {
                assert_eq!(t.entries[k].m, m);
                assert_eq!(t.entries[k].log_p, l);
                k += 1;
            }
        }
        assert_eq!(k, t.len());
        assert_eq!(t.lambda(64).unwrap(), 2f64.ln());
        assert_eq!(t.lambda(6).unwrap(), 0.0);
        assert!(t.lambda(limit + 1).is_err());
    }

    #[test]
    fn prime_count_at_one_million() {
        let t = build_mangoldt_table(1_000_000).unwrap();
        let primes = t.entries.iter().filter(|e| (e.m as f64).ln() == e.log_p).count();
        assert_eq!(primes, 78_498);
    }
}
