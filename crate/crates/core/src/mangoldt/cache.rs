//! Binary cache of a Mangoldt table.
//!
//! Layout (little-endian): magic `LIAM`, u32 version, u64 limit, u64 count,
//! then `count` records of (u64 m, f64 log_p) in ascending m.

use super::sieve::{MangoldtEntry, MangoldtTable};
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

pub const MAGIC: &[u8; 4] = b"LIAM";
pub const VERSION: u32 = 1;
const HEADER_LEN: u64 = 4 + 4 + 8 + 8;
const RECORD_LEN: u64 = 16;

/// Writes the table to `path`.
pub fn save_table(table: &MangoldtTable, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&table.limit.to_le_bytes())?;
    w.write_all(&(table.entries.len() as u64).to_le_bytes())?;
    for e in &table.entries {
        w.write_all(&e.m.to_le_bytes())?;
        w.write_all(&e.log_p.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a table, checking header, length and ordering.
pub fn load_table(path: &Path) -> Result<MangoldtTable> {
    let file = std::fs::File::open(path)?;
    let size = file.metadata()?.len();
    let mut r = BufReader::new(file);
    let mut header = [0u8; HEADER_LEN as usize];
    r.read_exact(&mut header).map_err(|_| Error::Corrupt("truncated header".into()))?;
    if &header[0..4] != MAGIC {
        return Err(Error::Corrupt("bad magic".into()));
    }
    let version = u32::from_le_bytes(header[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(Error::Corrupt(format!("unsupported version {version}")));
    }
    let limit = u64::from_le_bytes(header[8..16].try_into().unwrap());
    let count = u64::from_le_bytes(header[16..24].try_into().unwrap());
    if count.checked_mul(RECORD_LEN).and_then(|b| b.checked_add(HEADER_LEN)) != Some(size) {
        return Err(Error::Corrupt(format!("file size {size} does not match {count} records")));
    }
    let mut entries = Vec::with_capacity(count as usize);
    let mut rec = [0u8; RECORD_LEN as usize];
    let mut prev = 0u64;
    for i in 0..count {
        r.read_exact(&mut rec)?;
        let m = u64::from_le_bytes(rec[0..8].try_into().unwrap());
        let log_p = f64::from_le_bytes(rec[8..16].try_into().unwrap());
        if m <= prev || m > limit {
            return Err(Error::Corrupt(format!("record {i}: m = {m} out of order or above limit")));
        }
        prev = m;
        entries.push(MangoldtEntry { m, log_p });
    }
    Ok(MangoldtTable { limit, entries })
}

/// Outcome of [`verify_table`].
#[derive(Debug, Clone, PartialEq)]
pub struct CacheReport {
    pub entries: usize,
    pub spot_checks: usize,
    pub problems: Vec<String>,
}

impl CacheReport {
    pub fn is_ok(&self) -> bool {
        self.problems.is_empty()
    }
}

fn smallest_factor(m: u64) -> u64 {
    if m % 2 == 0 {
        return 2;
    }
    let mut p = 3;
    while p * p <= m {
        if m % p == 0 {
            return p;
        }
        p += 2;
    }
    m
}

fn is_prime_power(m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let p = smallest_factor(m);
    let mut r = m;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// Checks every record for internal consistency (m = p^k, log_p == ln p
/// for p recovered from log_p) and re-sieves `spot_checks` random gaps
/// between neighbouring records to confirm nothing is missing.
pub fn verify_table(table: &MangoldtTable, spot_checks: usize, seed: u64) -> CacheReport {
    let mut problems = Vec::new();
    for (i, e) in table.entries.iter().enumerate() {
        let p = e.log_p.exp().round() as u64;
        let consistent = p >= 2 && (p as f64).ln() == e.log_p && {
            let mut r = e.m;
            while r % p == 0 {
                r /= p;
            }
            r == 1
        };
        if !consistent {
            problems.push(format!("record {i}: m = {} inconsistent with log_p = {}", e.m, e.log_p));
            if problems.len() > 20 {
                break;
            }
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let n = table.entries.len();
    let checks = if n == 0 { 0 } else { spot_checks };
    for _ in 0..checks {
        let i = rng.gen_range(0..n);
        let e = table.entries[i];
        if is_prime_power(e.m).is_none() {
            problems.push(format!("record {i}: m = {} is not a prime power", e.m));
        }
        let next = table.entries.get(i + 1).map_or(table.limit + 1, |x| x.m);
        // Gaps between prime powers are short; cap the work anyway.
        for m in (e.m + 1)..next.min(e.m + 10_000) {
            if is_prime_power(m).is_some() {
                problems.push(format!("prime power {m} missing after record {i}"));
                break;
            }
        }
    }
    CacheReport { entries: n, spot_checks: checks, problems }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mangoldt::build_mangoldt_table;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.bin");
        let t = build_mangoldt_table(50_000).unwrap();
        save_table(&t, &path).unwrap();
        let back = load_table(&path).unwrap();
        assert_eq!(back, t);
        assert!(verify_table(&back, 1000, 1).is_ok());

        let mut bytes = std::fs::read(&path).unwrap();
        // Flip a byte inside the log_p field of record 100.
        let off = (HEADER_LEN + 100 * RECORD_LEN + 9) as usize;
        bytes[off] ^= 0x40;
        std::fs::write(&path, &bytes).unwrap();
        let bad = load_table(&path).unwrap();
        assert!(!verify_table(&bad, 10, 1).is_ok());

        bytes[0] = b'X';
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(load_table(&path), Err(Error::Corrupt(_))));
    }

    #[test]
    fn truncated_file_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.bin");
        save_table(&build_mangoldt_table(1000).unwrap(), &path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 3]).unwrap();
        assert!(matches!(load_table(&path), Err(Error::Corrupt(_))));
    }

    #[test]
    fn missing_entry_is_found_by_spot_checks() {
        let mut t = build_mangoldt_table(2000).unwrap();
        t.entries.remove(40);
        let r = verify_table(&t, 2000, 3);
        assert!(r.problems.iter().any(|p| p.contains("missing")));
    }
}
