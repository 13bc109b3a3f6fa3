use crate::commands::{ComparisonRow, PositivityRow};
use genli::record::LiCoefficientRecord;
use std::fmt::Write as _;

/// Shortest round-trip form, switching to exponent notation outside [1e-4, 1e16).
pub fn fmt_f64(x: f64) -> String {
    let m = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&m) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub const CSV_HEADER: &str = "n,a_re,a_im,route,value_re,value_im,uncertainty,params_digest";

pub fn records_csv(records: &[LiCoefficientRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.n,
            fmt_f64(r.a.re),
            fmt_f64(r.a.im),
            r.route,
            fmt_f64(r.value.re),
            fmt_f64(r.value.im),
            fmt_f64(r.uncertainty),
            r.params_digest
        );
    }
    out
}

pub fn records_json(records: &[LiCoefficientRecord]) -> String {
    let mut s = serde_json::to_string_pretty(records).unwrap_or_else(|_| "[]".into());
    s.push('\n');
    s
}

pub fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("n,a_re,a_im");
    if let Some(first) = rows.first() {
        for v in &first.values {
            let r = v.route.as_str();
            let _ = write!(out, ",{r}_re,{r}_im,{r}_uncertainty");
        }
    }
    out.push_str(",max_discrepancy,combined_uncertainty,pass\n");
    for row in rows {
        let _ = write!(out, "{},{},{}", row.n, fmt_f64(row.a.re), fmt_f64(row.a.im));
        for v in &row.values {
            let _ = write!(out, ",{},{},{}", fmt_f64(v.value.re), fmt_f64(v.value.im), fmt_f64(v.uncertainty));
        }
        let _ = writeln!(out, ",{},{},{}", fmt_f64(row.max_discrepancy), fmt_f64(row.combined_uncertainty), row.pass);
    }
    out
}

pub fn positivity_csv(rows: &[PositivityRow]) -> String {
    let mut out = String::from("n,a,route,value,uncertainty,positive\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            fmt_f64(r.a),
            r.route,
            fmt_f64(r.value),
            fmt_f64(r.uncertainty),
            r.positive
        );
    }
    out
}
