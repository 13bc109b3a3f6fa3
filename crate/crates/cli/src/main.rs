use clap::{Args, Parser, Subcommand, ValueEnum};
use genli_cli::{
    cmd_cache, cmd_compare, cmd_compute, cmd_mellin_check, cmd_positivity, cmd_truncation, cmd_zeros_verify,
    parse_complex, CacheAction, CliError, Outcome, RunConfig,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "genli", version, about = "Generalized Li coefficients of the Riemann zeta function")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// INI-style config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    n_min: Option<u32>,
    #[arg(long, global = true)]
    n_max: Option<u32>,
    /// Parameter a as "re[,im]"; repeatable.
    #[arg(long = "a", global = true, allow_hyphen_values = true)]
    a: Vec<String>,
    /// Comma-separated subset of zeros,arith,xi.
    #[arg(long, global = true)]
    routes: Option<String>,
    #[arg(long, global = true)]
    mangoldt_limit: Option<String>,
    #[arg(long, global = true)]
    zeros_file: Option<PathBuf>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Relative tolerance used by compare.
    #[arg(long, global = true)]
    tolerance: Option<String>,
    /// Log-Gaussian smoothing width; 0 for sharp cutoffs.
    #[arg(long, global = true)]
    smoothing: Option<String>,
    #[arg(long, global = true)]
    window: Option<String>,
    #[arg(long, global = true)]
    eps0: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute k_{n,a} by the selected routes.
    Compute(Common),
    /// Compare routes against their combined uncertainties.
    Compare(Common),
    /// Sign table for real a.
    Positivity(Common),
    /// Manage the sieve cache.
    Cache {
        action: CacheArg,
        #[command(flatten)]
        common: Common,
    },
    /// Mellin pair, Laguerre and explicit-formula checks.
    MellinCheck(Common),
    /// Truncation convergence report as CSV.
    Truncation {
        #[arg(long, default_value_t = 1e-2)]
        eps_hi: f64,
        #[arg(long, default_value_t = 1e-6)]
        eps_lo: f64,
        #[arg(long, default_value_t = 321)]
        count: usize,
        /// Evaluation points "re[,im]"; repeatable.
        #[arg(long = "s", allow_hyphen_values = true)]
        s: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Re-locate the zeros of a zeros file.
    ZerosVerify {
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheArg {
    Build,
    Verify,
    Purge,
}

fn config(c: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = match &c.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::MissingInput(format!("config {}: {e}", p.display())))?;
            RunConfig::from_ini(&text)?
        }
        None => RunConfig::default(),
    };
    let mut a_seen = false;
    let pairs: Vec<(&str, Option<String>)> = vec![
        ("n_min", c.n_min.map(|v| v.to_string())),
        ("n_max", c.n_max.map(|v| v.to_string())),
        ("routes", c.routes.clone()),
        ("mangoldt_limit", c.mangoldt_limit.clone()),
        ("zeros_file", c.zeros_file.as_ref().map(|p| p.display().to_string())),
        ("out", c.out.as_ref().map(|p| p.display().to_string())),
        ("cache_dir", c.cache_dir.as_ref().map(|p| p.display().to_string())),
        ("format", c.format.clone()),
        ("tolerance", c.tolerance.clone()),
        ("smoothing", c.smoothing.clone()),
        ("window", c.window.clone()),
        ("eps0", c.eps0.clone()),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            cfg.set(k, &v, &mut a_seen)?;
        }
    }
    for a in &c.a {
        cfg.set("a", a, &mut a_seen)?;
    }
    Ok(cfg)
}

fn emit(cfg: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    match &cfg.out {
        Some(p) => std::fs::write(p, &outcome.report)?,
        None => print!("{}", outcome.report),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (cfg, outcome) = match cli.command {
        Command::Compute(c) => {
            let cfg = config(&c)?;
            let (o, failures) = cmd_compute(&cfg)?;
            for f in failures {
                eprintln!("{f}");
            }
            (cfg, o)
        }
        Command::Compare(c) => {
            let cfg = config(&c)?;
            let (o, _) = cmd_compare(&cfg)?;
            (cfg, o)
        }
        Command::Positivity(c) => {
            let cfg = config(&c)?;
            let (o, _) = cmd_positivity(&cfg)?;
            (cfg, o)
        }
        Command::Cache { action, common } => {
            let cfg = config(&common)?;
            let action = match action {
                CacheArg::Build => CacheAction::Build,
                CacheArg::Verify => CacheAction::Verify,
                CacheArg::Purge => CacheAction::Purge,
            };
            let o = cmd_cache(action, &cfg)?;
            (cfg, o)
        }
        Command::MellinCheck(c) => {
            let cfg = config(&c)?;
            let o = cmd_mellin_check(&cfg)?;
            (cfg, o)
        }
        Command::Truncation { eps_hi, eps_lo, count, s, common } => {
            let cfg = config(&common)?;
            if !(0.0 < eps_lo && eps_lo < eps_hi && eps_hi < 1.0) || count < 2 {
                return Err(CliError::Config("need 0 < eps-lo < eps-hi < 1 and count >= 2".into()));
            }
            let s_grid = s.iter().map(|v| parse_complex(v)).collect::<Result<Vec<_>, _>>()?;
            let eps = genli::mellin::log_spaced(eps_hi, eps_lo, count);
            let (o, exponent) = cmd_truncation(&cfg, &eps, &s_grid)?;
            if let Some(e) = exponent {
                eprintln!("empirical exponent of the zero-sum defect: {e:.4}");
            }
            (cfg, o)
        }
        Command::ZerosVerify { tol, common } => {
            let cfg = config(&common)?;
            let o = cmd_zeros_verify(&cfg, tol)?;
            (cfg, o)
        }
    };
    emit(&cfg, &outcome)?;
    Ok(outcome.exit_code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
