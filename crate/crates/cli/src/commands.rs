use crate::config::{OutputFormat, RouteKind, RunConfig};
use crate::output::{comparison_csv, positivity_csv, records_csv, records_json};
use crate::{CliError, Outcome};
use genli::mangoldt::{build_mangoldt_table, load_table, save_table, verify_table, MangoldtTable};
use genli::mellin::{
    eval_g, eval_p_tilde, forward_mellin, p_laguerre, p_scale, p_tilde_laguerre, p_tilde_scale, truncation_study, weil_breakdown,
    TestFunctionSpec,
};
use genli::record::LiCoefficientRecord;
use genli::xi_route::{k_xi, ln_xi_taylor_auto};
use genli::zeros::{k_zero_sum, load_zero_table, verify_zero_table, TailModel, ZeroFormat, ZeroTable};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Spot checks made by `cache verify`.
pub const CACHE_SPOT_CHECKS: usize = 1000;
const CACHE_SEED: u64 = 0x5eed;

fn cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("mangoldt_{limit}.bin"))
}

/// Loads `mangoldt_<limit>.bin` from the cache directory if present,
/// otherwise sieves and (with a cache directory) stores the table.
pub fn load_or_build_table(limit: u64, cache_dir: Option<&Path>) -> Result<MangoldtTable, CliError> {
    if let Some(dir) = cache_dir {
        let path = cache_path(dir, limit);
        if path.exists() {
            let t = load_table(&path)?;
            if t.limit() != limit {
                return Err(CliError::Corrupt(format!("{} holds limit {}", path.display(), t.limit())));
            }
            return Ok(t);
        }
        let t = build_mangoldt_table(limit)?;
        std::fs::create_dir_all(dir)?;
        save_table(&t, &path)?;
        return Ok(t);
    }
    Ok(build_mangoldt_table(limit)?)
}

fn load_zeros(cfg: &RunConfig) -> Result<ZeroTable, CliError> {
    let path = cfg
        .zeros_path
        .as_ref()
        .ok_or_else(|| CliError::MissingInput("the zeros route needs --zeros-file".into()))?;
    if !path.exists() {
        return Err(CliError::MissingInput(format!("zeros file {} not found", path.display())));
    }
    Ok(load_zero_table(path, ZeroFormat::PlainOrdinates)?)
}

struct Inputs {
    table: Option<MangoldtTable>,
    zeros: Option<ZeroTable>,
}

impl Inputs {
    fn prepare(cfg: &RunConfig, routes: &[RouteKind]) -> Result<Self, CliError> {
        let zeros = if routes.contains(&RouteKind::Zeros) { Some(load_zeros(cfg)?) } else { None };
        let table = if routes.contains(&RouteKind::Arith) {
            Some(load_or_build_table(cfg.mangoldt_limit, cfg.cache_dir.as_deref())?)
        } else {
            None
        };
        Ok(Self { table, zeros })
    }
}

fn route_records(cfg: &RunConfig, route: RouteKind, a: Complex64, inputs: &Inputs) -> genli::Result<Vec<LiCoefficientRecord>> {
    let ns = cfg.ns();
    match route {
        RouteKind::Arith => {
            let table = inputs.table.as_ref().expect("table prepared for arith");
            genli::arith::k_arith_batch(&ns, a, table, &cfg.arith_options())
        }
        RouteKind::Zeros => {
            let zeros = inputs.zeros.as_ref().expect("zeros prepared for zero route");
            let tail = TailModel::for_table(zeros)?;
            ns.iter().map(|&n| k_zero_sum(n, a, zeros, &tail)).collect()
        }
        RouteKind::Xi => {
            let series = ln_xi_taylor_auto(1.0 - a, cfg.n_max as usize)?;
            ns.iter().map(|&n| k_xi(n, a, &series)).collect()
        }
    }
}

fn format_records(cfg: &RunConfig, records: &[LiCoefficientRecord]) -> String {
    match cfg.format {
        OutputFormat::Csv => records_csv(records),
        OutputFormat::Json => records_json(records),
    }
}

/// One record per (a, route, n); route failures are reported and give exit 2.
pub fn cmd_compute(cfg: &RunConfig) -> Result<(Outcome, Vec<String>), CliError> {
    cfg.validate()?;
    let inputs = Inputs::prepare(cfg, &cfg.routes)?;
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for &a in &cfg.a_values {
        for &route in &cfg.routes {
            match route_records(cfg, route, a, &inputs) {
                Ok(r) => records.extend(r),
                Err(e) => failures.push(format!("route {} at a = {a}: {e}", route.as_str())),
            }
        }
    }
    let exit_code = if failures.is_empty() { 0 } else { 2 };
    Ok((Outcome { report: format_records(cfg, &records), exit_code }, failures))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteValue {
    pub route: RouteKind,
    pub value: Complex64,
    pub uncertainty: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub n: u32,
    pub a: Complex64,
    pub values: Vec<RouteValue>,
    pub max_discrepancy: f64,
    pub combined_uncertainty: f64,
    pub pass: bool,
}

/// Cross-route table; a row passes iff its largest pairwise discrepancy is
/// within the summed uncertainties (and within `tolerance` relative, if set).
pub fn cmd_compare(cfg: &RunConfig) -> Result<(Outcome, Vec<ComparisonRow>), CliError> {
    cfg.validate()?;
    if cfg.routes.len() < 2 {
        return Err(CliError::Config("compare needs at least two routes".into()));
    }
    let inputs = Inputs::prepare(cfg, &cfg.routes)?;
    let mut rows = Vec::new();
    for &a in &cfg.a_values {
        let per_route: Vec<_> = cfg.routes.iter().map(|&r| (r, route_records(cfg, r, a, &inputs).ok())).collect();
        for (i, n) in cfg.ns().into_iter().enumerate() {
            let values: Vec<RouteValue> = per_route
                .iter()
                .map(|(route, recs)| match recs {
                    Some(r) => RouteValue { route: *route, value: r[i].value, uncertainty: r[i].uncertainty },
                    None => RouteValue { route: *route, value: Complex64::new(f64::NAN, f64::NAN), uncertainty: f64::NAN },
                })
                .collect();
            let mut max_discrepancy = 0.0f64;
            for x in 0..values.len() {
                for y in x + 1..values.len() {
                    let d = (values[x].value - values[y].value).norm();
                    max_discrepancy = if d.is_nan() { f64::NAN } else { max_discrepancy.max(d) };
                }
            }
            let combined_uncertainty: f64 = values.iter().map(|v| v.uncertainty).sum();
            let scale = values.iter().map(|v| v.value.norm()).fold(0.0, f64::max);
            let pass = max_discrepancy <= combined_uncertainty
                && cfg.tolerance.is_none_or(|t| max_discrepancy <= t * scale);
            rows.push(ComparisonRow { n, a, values, max_discrepancy, combined_uncertainty, pass });
        }
    }
    let exit_code = if rows.iter().all(|r| r.pass) { 0 } else { 2 };
    let report = match cfg.format {
        OutputFormat::Csv => comparison_csv(&rows),
        OutputFormat::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n, "a_re": r.a.re, "a_im": r.a.im,
                        "values": r.values.iter().map(|v| serde_json::json!({
                            "route": v.route.as_str(), "value_re": v.value.re, "value_im": v.value.im,
                            "uncertainty": v.uncertainty})).collect::<Vec<_>>(),
                        "max_discrepancy": r.max_discrepancy, "combined_uncertainty": r.combined_uncertainty, "pass": r.pass,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&v).unwrap_or_default() + "\n"
        }
    };
    Ok((Outcome { report, exit_code }, rows))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositivityRow {
    pub n: u32,
    pub a: f64,
    pub route: String,
    pub value: f64,
    pub uncertainty: f64,
    pub positive: bool,
}

pub const CONSISTENT: &str = "consistent with RH at this scale";

/// Sign table for real a; uses the zero route when a zeros file is given,
/// otherwise prime sums where they apply and ln xi elsewhere. A value counts
/// as positive when it exceeds its uncertainty. Exit 2 if any is not.
pub fn cmd_positivity(cfg: &RunConfig) -> Result<(Outcome, Vec<PositivityRow>), CliError> {
    cfg.validate()?;
    for a in &cfg.a_values {
        if a.im != 0.0 {
            return Err(CliError::Config(format!("positivity needs real a, got {a}")));
        }
        if a.re == 0.5 {
            return Err(CliError::Config("a = 1/2 is excluded".into()));
        }
    }
    let use_zeros = cfg.zeros_path.is_some();
    let needs_arith = !use_zeros
        && cfg.a_values.iter().any(|a| genli::arith::classify(*a, cfg.eps0).is_ok());
    let mut wanted = Vec::new();
    if use_zeros {
        wanted.push(RouteKind::Zeros);
    }
    if needs_arith {
        wanted.push(RouteKind::Arith);
    }
    let inputs = Inputs::prepare(cfg, &wanted)?;
    let mut rows = Vec::new();
    for &a in &cfg.a_values {
        let route = if use_zeros {
            RouteKind::Zeros
        } else if genli::arith::classify(a, cfg.eps0).is_ok() {
            RouteKind::Arith
        } else {
            RouteKind::Xi
        };
        let recs = route_records(cfg, route, a, &inputs)
            .map_err(|e| CliError::RouteFailure(format!("route {} at a = {a}: {e}", route.as_str())))?;
        for r in recs {
            rows.push(PositivityRow {
                n: r.n,
                a: a.re,
                route: r.route.to_string(),
                value: r.value.re,
                uncertainty: r.uncertainty,
                positive: r.value.re > r.uncertainty,
            });
        }
    }
    let all = rows.iter().all(|r| r.positive);
    let mut report = positivity_csv(&rows);
    let _ = writeln!(report, "# {}", if all { CONSISTENT } else { "NOT all positive within uncertainty" });
    Ok((Outcome { report, exit_code: if all { 0 } else { 2 } }, rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheAction {
    Build,
    Verify,
    Purge,
}

pub fn cmd_cache(action: CacheAction, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let dir = cfg
        .cache_dir
        .as_deref()
        .ok_or_else(|| CliError::Config("cache commands need --cache-dir".into()))?;
    let path = cache_path(dir, cfg.mangoldt_limit);
    let report = match action {
        CacheAction::Build => {
            let t = build_mangoldt_table(cfg.mangoldt_limit)?;
            std::fs::create_dir_all(dir)?;
            save_table(&t, &path)?;
            format!("built {} ({} entries)\n", path.display(), t.len())
        }
        CacheAction::Verify => {
            if !path.exists() {
                return Err(CliError::MissingInput(format!("{} not found", path.display())));
            }
            let t = load_table(&path)?;
            if t.limit() != cfg.mangoldt_limit {
                return Err(CliError::Corrupt(format!("{} holds limit {}", path.display(), t.limit())));
            }
            let r = verify_table(&t, CACHE_SPOT_CHECKS, CACHE_SEED);
            if !r.is_ok() {
                return Err(CliError::Corrupt(r.problems.join("; ")));
            }
            format!("verified {} ({} entries, {} spot checks)\n", path.display(), r.entries, r.spot_checks)
        }
        CacheAction::Purge => {
            let mut removed = 0;
            if dir.exists() {
                for e in std::fs::read_dir(dir)? {
                    let p = e?.path();
                    let name = p.file_name().and_then(|s| s.to_str()).unwrap_or("");
                    if name.starts_with("mangoldt_") && name.ends_with(".bin") {
                        std::fs::remove_file(&p)?;
                        removed += 1;
                    }
                }
            }
            format!("removed {removed} cache file(s) from {}\n", dir.display())
        }
    };
    Ok(Outcome { report, exit_code: 0 })
}

/// Mellin pair grid, Laguerre identities at random points and, with a zeros
/// file, the explicit-formula breakdown for n in 1..=3, a in {2, 3}.
pub fn cmd_mellin_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut report = String::new();
    let mut ok = true;
    let mut line = |report: &mut String, pass: bool, text: String| {
        ok &= pass;
        let _ = writeln!(report, "{} {text}", if pass { "PASS" } else { "FAIL" });
    };
    for n in 1..=6 {
        for a in [1.2, 2.0] {
            for s in [Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0), Complex64::new(1.0, 2.0)] {
                let spec = TestFunctionSpec::new(n, Complex64::new(a, 0.0), 0.0)?;
                let (num, closed) = forward_mellin(&spec, s)?;
                let d = (num - closed).norm();
                line(&mut report, d <= 1e-8, format!("mellin n={n} a={a} s={s} diff={d:e}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.gen_range(1..=10);
        let a = Complex64::new(rng.gen_range(0.6..3.0), rng.gen_range(-1.0..1.0));
        let spec = TestFunctionSpec::new(n, a, 0.0)?;
        let x: f64 = rng.gen_range(1e-3..1.0);
        let y: f64 = rng.gen_range(1.0..10.0);
        let (p, l) = (eval_g(&spec, x), p_laguerre(&spec, x));
        worst = worst.max((p - l).norm() / p_scale(&spec, x));
        let (p, l) = (eval_p_tilde(&spec, y), p_tilde_laguerre(&spec, y));
        worst = worst.max((p - l).norm() / p_tilde_scale(&spec, y));
    }
    line(&mut report, worst <= 1e-12, format!("laguerre 100 points max_scaled_diff={worst:e}"));
    if cfg.zeros_path.is_some() {
        let zeros = load_zeros(cfg)?;
        let tail = TailModel::for_table(&zeros)?;
        let table = load_or_build_table(cfg.mangoldt_limit, cfg.cache_dir.as_deref())?;
        for n in 1..=3 {
            for a in [2.0, 3.0] {
                let spec = TestFunctionSpec::new(n, Complex64::new(a, 0.0), 0.0)?;
                let w = weil_breakdown(&spec, &table, &zeros, &tail)?;
                let bound = 1e-4 + w.tail_uncertainty();
                line(
                    &mut report,
                    w.discrepancy() <= bound,
                    format!("weil n={n} a={a} total={} zero_side={} diff={:e} bound={bound:e}", w.total.re, w.zero_side.re, w.discrepancy()),
                );
            }
        }
    }
    Ok(Outcome { report, exit_code: if ok { 0 } else { 2 } })
}

/// Convergence report for g_{n_min, a} with the first a of the config.
pub fn cmd_truncation(cfg: &RunConfig, eps: &[f64], s_grid: &[Complex64]) -> Result<(Outcome, Option<f64>), CliError> {
    cfg.validate()?;
    let zeros = if cfg.zeros_path.is_some() { Some(load_zeros(cfg)?) } else { None };
    let r = truncation_study(cfg.n_min, cfg.a_values[0], s_grid, eps, zeros.as_ref())?;
    Ok((Outcome { report: r.to_csv(), exit_code: 0 }, r.empirical_exponent))
}

/// Re-locates every zero of the file by sign changes of Z(t). Exit 6 on failures.
pub fn cmd_zeros_verify(cfg: &RunConfig, tol: f64) -> Result<Outcome, CliError> {
    let zeros = load_zeros(cfg)?;
    let r = verify_zero_table(&zeros, tol);
    let mut report = format!(
        "checked {} zeros, max residual {:e}, {} failures, {} missing sign changes\n",
        r.count,
        r.max_residual,
        r.failures.len(),
        r.sign_change_failures.len()
    );
    for f in r.failures.iter().take(20) {
        let _ = writeln!(report, "zero {} at {}: residual {:e}", f.index, f.ordinate, f.residual);
    }
    Ok(Outcome { report, exit_code: if r.is_ok() { 0 } else { 6 } })
}
