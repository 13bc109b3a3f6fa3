use crate::error::{Error, Result};
use std::path::Path;

/// Ordinates gamma > 0 of nontrivial zeros 1/2 + i gamma, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<f64>,
    /// Real parts are taken to be exactly 1/2.
    pub beta_assumed: bool,
    pub source: String,
}

/// Supported input formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroFormat {
    /// One decimal ordinate per line; blank lines and lines starting with '#' ignored.
    PlainOrdinates,
}

impl ZeroTable {
    pub fn from_ordinates(ordinates: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        for (i, &g) in ordinates.iter().enumerate() {
            if !(g > 0.0 && g.is_finite()) {
                return Err(Error::Parse { line: i + 1, message: format!("ordinate {g} is not positive") });
            }
            if i > 0 && g <= ordinates[i - 1] {
                return Err(Error::Order { line: i + 1 });
            }
        }
        Ok(Self { ordinates, beta_assumed: true, source: source.into() })
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    /// Largest ordinate, or 0 for an empty table.
    pub fn max_height(&self) -> f64 {
        self.ordinates.last().copied().unwrap_or(0.0)
    }

    /// The first `m` zeros.
    pub fn prefix(&self, m: usize) -> ZeroTable {
        ZeroTable {
            ordinates: self.ordinates[..m.min(self.len())].to_vec(),
            beta_assumed: self.beta_assumed,
            source: format!("{}[..{m}]", self.source),
        }
    }

    /// The bundled table of the first 100 zeros.
    pub fn bundled() -> ZeroTable {
        parse_zero_table(include_str!("../../data/zeros_100.txt"), "bundled:zeros_100")
            .expect("bundled zero table is well formed")
    }
}

/// Parses the plain-ordinates format. Line numbers in errors are 1-based
/// physical lines.
pub fn parse_zero_table(text: &str, source: &str) -> Result<ZeroTable> {
    let mut ordinates = Vec::new();
    let mut last = 0.0;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g: f64 = line
            .parse()
            .map_err(|_| Error::Parse { line: i + 1, message: format!("not a number: {line:?}") })?;
        if !(g > 0.0 && g.is_finite()) {
            return Err(Error::Parse { line: i + 1, message: format!("ordinate {g} is not positive") });
        }
        if g <= last {
            return Err(Error::Order { line: i + 1 });
        }
        last = g;
        ordinates.push(g);
    }
    Ok(ZeroTable { ordinates, beta_assumed: true, source: source.to_string() })
}

/// Loads a zero table from disk.
pub fn load_zero_table(path: &Path, format: ZeroFormat) -> Result<ZeroTable> {
    match format {
        ZeroFormat::PlainOrdinates => {
            let text = std::fs::read_to_string(path)?;
            parse_zero_table(&text, &path.display().to_string())
        }
    }
}
