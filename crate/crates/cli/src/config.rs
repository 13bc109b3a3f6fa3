use crate::CliError;
use genli::arith::{ArithOptions, DEFAULT_EPS0};
use genli::mangoldt::{Summation, DEFAULT_SMOOTHING_WIDTH, DEFAULT_WINDOW};
use num_complex::Complex64;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RouteKind {
    Zeros,
    Arith,
    Xi,
}

impl RouteKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            RouteKind::Zeros => "zeros",
            RouteKind::Arith => "arith",
            RouteKind::Xi => "xi",
        }
    }
}

impl FromStr for RouteKind {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "zeros" => Ok(RouteKind::Zeros),
            "arith" => Ok(RouteKind::Arith),
            "xi" => Ok(RouteKind::Xi),
            other => Err(CliError::Config(format!("unknown route '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::Config(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub a_values: Vec<Complex64>,
    pub routes: Vec<RouteKind>,
    pub mangoldt_limit: u64,
    pub zeros_path: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub cache_dir: Option<PathBuf>,
    pub format: OutputFormat,
    /// Width of the log-Gaussian smoothing; 0 selects sharp cutoffs.
    pub smoothing: f64,
    pub window: usize,
    pub eps0: f64,
    /// Relative tolerance for `compare`, on top of the uncertainty check.
    pub tolerance: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_min: 1,
            n_max: 10,
            a_values: vec![Complex64::new(2.0, 0.0)],
            routes: vec![RouteKind::Arith],
            mangoldt_limit: 10_000_000,
            zeros_path: None,
            out: None,
            cache_dir: None,
            format: OutputFormat::Csv,
            smoothing: DEFAULT_SMOOTHING_WIDTH,
            window: DEFAULT_WINDOW,
            eps0: DEFAULT_EPS0,
            tolerance: None,
        }
    }
}

/// "re" or "re,im".
pub fn parse_complex(s: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Config(format!("cannot parse '{s}' as re[,im]"));
    let mut parts = s.split(',');
    let re: f64 = parts.next().ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
    let im: f64 = match parts.next() {
        Some(p) => p.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.trim().parse().map_err(|_| CliError::Config(format!("bad value '{v}' for {key}")))
}

pub(crate) fn parse_routes(v: &str) -> Result<Vec<RouteKind>, CliError> {
    let mut routes = v
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(RouteKind::from_str)
        .collect::<Result<Vec<_>, _>>()?;
    routes.sort();
    routes.dedup();
    Ok(routes)
}

impl RunConfig {
    /// Applies one key=value setting. A first `a` replaces the defaults.
    pub fn set(&mut self, key: &str, value: &str, a_seen: &mut bool) -> Result<(), CliError> {
        match key.trim().replace('-', "_").as_str() {
            "n_min" => self.n_min = parse_num(key, value)?,
            "n_max" => self.n_max = parse_num(key, value)?,
            "a" => {
                if !*a_seen {
                    self.a_values.clear();
                    *a_seen = true;
                }
                self.a_values.push(parse_complex(value)?);
            }
            "routes" => self.routes = parse_routes(value)?,
            "mangoldt_limit" => self.mangoldt_limit = parse_num::<f64>(key, value).and_then(|x| {
                if x >= 1.0 && x.fract() == 0.0 && x < 2f64.powi(53) {
                    Ok(x as u64)
                } else {
                    Err(CliError::Config(format!("bad value '{value}' for {key}")))
                }
            })?,
            "zeros_file" => self.zeros_path = Some(PathBuf::from(value.trim())),
            "out" => self.out = Some(PathBuf::from(value.trim())),
            "cache_dir" => self.cache_dir = Some(PathBuf::from(value.trim())),
            "format" => self.format = value.parse()?,
            "smoothing" => self.smoothing = parse_num(key, value)?,
            "window" => self.window = parse_num(key, value)?,
            "eps0" => self.eps0 = parse_num(key, value)?,
            "tolerance" => self.tolerance = Some(parse_num(key, value)?),
            other => return Err(CliError::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// INI-style text: `key = value` lines, `#`/`;` comments, section headers ignored.
    pub fn from_ini(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        let mut a_seen = false;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') || line.starts_with('[') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", i + 1)))?;
            cfg.set(k, v, &mut a_seen).map_err(|e| CliError::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_min < 1 || self.n_max > 62 || self.n_min > self.n_max {
            return Err(CliError::Config(format!("n range {}..={} must lie within 1..=62", self.n_min, self.n_max)));
        }
        if self.routes.is_empty() {
            return Err(CliError::Config("no routes selected".into()));
        }
        if self.a_values.is_empty() {
            return Err(CliError::Config("no values of a given".into()));
        }
        if !(self.smoothing >= 0.0) || self.window == 0 {
            return Err(CliError::Config("smoothing must be >= 0 and window >= 1".into()));
        }
        Ok(())
    }

    pub fn ns(&self) -> Vec<u32> {
        (self.n_min..=self.n_max).collect()
    }

    pub fn arith_options(&self) -> ArithOptions {
        let summation = if self.smoothing == 0.0 {
            Summation::Sharp
        } else {
            Summation::LogGaussian { width: self.smoothing }
        };
        ArithOptions { schedule: None, summation, window: self.window, eps0: self.eps0, tolerance: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ini_parsing() {
        let cfg = RunConfig::from_ini(
            "# run\n[run]\nn_min = 2\nn_max=5\na = 2\na = 0.75, 1.5\nroutes = xi,arith\nmangoldt_limit = 1e6\nformat = json\n",
        )
        .unwrap();
        assert_eq!((cfg.n_min, cfg.n_max), (2, 5));
        assert_eq!(cfg.a_values, vec![Complex64::new(2.0, 0.0), Complex64::new(0.75, 1.5)]);
        assert_eq!(cfg.routes, vec![RouteKind::Arith, RouteKind::Xi]);
        assert_eq!(cfg.mangoldt_limit, 1_000_000);
        assert_eq!(cfg.format, OutputFormat::Json);
    }

    #[test]
    fn ini_errors() {
        assert!(matches!(RunConfig::from_ini("n_min 3"), Err(CliError::Config(_))));
        assert!(matches!(RunConfig::from_ini("colour = red"), Err(CliError::Config(_))));
        assert!(matches!(RunConfig::from_ini("a = 1,2,3"), Err(CliError::Config(_))));
        let cfg = RunConfig::from_ini("routes =").unwrap();
        assert!(cfg.validate().is_err());
        let cfg = RunConfig::from_ini("n_max = 63").unwrap();
        assert!(cfg.validate().is_err());
    }
}
