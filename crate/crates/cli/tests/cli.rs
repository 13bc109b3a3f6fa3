use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_genli"))
}

fn zeros_file() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/zeros_10000.txt")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn compute_arith_rows_are_deterministic() {
    let args = ["compute", "--routes", "arith", "--n-min", "1", "--n-max", "3", "--a", "2", "--mangoldt-limit", "1e6"];
    let first = run(&args);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], genli_cli::CSV_HEADER);
    assert_eq!(lines.len(), 4);
    let expect = [0.207_198_694_590_002_1, 0.825_835_545_260_228_5, 1.847_134_762_758_984_3];
    for (line, e) in lines[1..].iter().zip(expect) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[3], "arith_eq4");
        let v: f64 = cols[4].parse().unwrap();
        assert!((v - e).abs() < 1e-8, "{line}");
    }
    assert_eq!(run(&args).stdout, first.stdout);
}

#[test]
fn empty_routes_is_a_config_error() {
    assert_eq!(code(&run(&["compute", "--routes", ""])), 4);
    assert_eq!(code(&run(&["compute", "--routes", "primes"])), 4);
    assert_eq!(code(&run(&["compute", "--n-max", "70"])), 4);
    assert_eq!(code(&run(&["frobnicate"])), 4);
}

#[test]
fn missing_zeros_file() {
    assert_eq!(code(&run(&["compute", "--routes", "zeros"])), 3);
    assert_eq!(code(&run(&["compute", "--routes", "zeros", "--zeros-file", "/nonexistent/zeros.txt"])), 3);
}

#[test]
fn compare_passes_and_fails() {
    let z = zeros_file();
    let z = z.to_str().unwrap();
    let ok = run(&["compare", "--routes", "arith,zeros,xi", "--n-max", "10", "--a", "2", "--mangoldt-limit", "1e6", "--zeros-file", z]);
    assert_eq!(code(&ok), 0, "{}", String::from_utf8_lossy(&ok.stdout));
    let text = String::from_utf8(ok.stdout).unwrap();
    assert_eq!(text.lines().count(), 11);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));

    let starved = run(&["compare", "--routes", "arith,xi", "--n-max", "3", "--mangoldt-limit", "1000", "--smoothing", "0", "--tolerance", "1e-9"]);
    assert_eq!(code(&starved), 2);
    assert!(String::from_utf8(starved.stdout).unwrap().contains(",false"));

    assert_eq!(code(&run(&["compare", "--routes", "xi"])), 4);
}

#[test]
fn positivity_report() {
    let z = zeros_file();
    let out = run(&["positivity", "--n-max", "50", "--a", "0.75", "--a", "2", "--zeros-file", z.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 102);
    assert!(text.trim_end().ends_with(genli_cli::CONSISTENT));
    assert_eq!(code(&run(&["positivity", "--a", "0.5", "--routes", "xi"])), 4);
    assert_eq!(code(&run(&["positivity", "--a", "2,1", "--routes", "xi"])), 4);
}

#[test]
fn cache_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let base = ["--cache-dir", d, "--mangoldt-limit", "1000000"];
    let with = |cmd: &[&str]| -> Vec<String> { cmd.iter().chain(base.iter()).map(|s| s.to_string()).collect() };
    let o = bin().args(with(&["cache", "build"])).output().unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(code(&bin().args(with(&["cache", "verify"])).output().unwrap()), 0);

    let path = dir.path().join("mangoldt_1000000.bin");
    let fresh = genli::mangoldt::build_mangoldt_table(1_000_000).unwrap();
    let loaded = genli::mangoldt::load_table(&path).unwrap();
    for x in [10, 1000, 65_537, 999_983, 1_000_000] {
        assert_eq!(
            loaded.chebyshev_psi(x).unwrap().to_bits(),
            fresh.chebyshev_psi(x).unwrap().to_bits()
        );
    }

    let mut bytes = std::fs::read(&path).unwrap();
    let at = bytes.len() - 100;
    bytes[at] ^= 0x01;
    std::fs::write(&path, &bytes).unwrap();
    assert_eq!(code(&bin().args(with(&["cache", "verify"])).output().unwrap()), 6);

    assert_eq!(code(&bin().args(with(&["cache", "purge"])).output().unwrap()), 0);
    assert!(!path.exists());
    assert_eq!(code(&bin().args(with(&["cache", "verify"])).output().unwrap()), 3);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    let out = dir.path().join("out.json");
    std::fs::write(&cfg, "[run]\nn_min = 2\nn_max = 4\na = 3\nroutes = xi\nformat = json\n").unwrap();
    let o = run(&["compute", "--config", cfg.to_str().unwrap(), "--n-max", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 2);
    assert_eq!(rows[0]["route"], "xi_deriv");

    std::fs::write(&cfg, "n_min = two\n").unwrap();
    assert_eq!(code(&run(&["compute", "--config", cfg.to_str().unwrap()])), 4);
}

#[test]
fn mellin_and_zero_checks() {
    let o = run(&["mellin-check"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 37);

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("z.txt");
    let text: String = genli::zeros::ZeroTable::bundled().ordinates()[..30].iter().map(|g| format!("{g:.12}\n")).collect();
    std::fs::write(&f, &text).unwrap();
    assert_eq!(code(&run(&["zeros-verify", "--zeros-file", f.to_str().unwrap()])), 0);
    std::fs::write(&f, text.replace("14.134725141735", "14.2")).unwrap();
    assert_eq!(code(&run(&["zeros-verify", "--zeros-file", f.to_str().unwrap()])), 6);
}

#[test]
fn truncation_csv() {
    let o = run(&["truncation", "--n-min", "1", "--a", "0.75", "--count", "5", "--s", "2", "--s", "0.5,14"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with(genli::mellin::TRUNCATION_CSV_HEADER));
    assert_eq!(text.lines().count(), 11);
}
