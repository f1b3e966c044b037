//! Deterministic JSON, CSV and text rendering.
//!
//! JSON is written by hand so that key order is fixed and every float is
//! printed with 17 significant digits (`{:.16e}`); non-finite values become
//! `null`.
//!
//! Spectrum key order: `command`, `params`, `total_dimension`,
//! `hermiticity_residual`, `eigen_residual`, `convergence_checked`,
//! `converged_count`, `eigenvalues`, `converged`, `positive_levels`.
//! Report key order: `command`, `title`, `passed`, `rows`, then any extra
//! sections; each row is `name`, `kind`, `value`, then `bound` and `passed`
//! for checks or `note` for findings.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use nadosc_core::hamiltonian::{OscParams, SpectrumResult};
use nadosc_core::report::{Bound, CheckReport, RowKind};

use crate::CliError;

/// Relative tolerance for merging degenerate levels in `positive_levels`.
pub const LEVEL_MERGE_TOL: f64 = 1e-9;

pub fn float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".into()
    }
}

pub fn string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn float_array(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| float(v)).collect();
    format!("[{}]", items.join(", "))
}

fn params_json(p: &OscParams) -> String {
    let phi: Vec<String> = p.phi.iter().map(|&v| float(v)).collect();
    format!(
        "{{\"dimension\": {}, \"mass\": {}, \"omega\": {}, \"eta\": {}, \"phi\": [{}], \"extra_sign\": {}, \
         \"truncation\": {}, \"guard_fraction\": {}, \"tolerance\": {}}}",
        p.dimension,
        float(p.mass),
        float(p.omega),
        float(p.eta),
        phi.join(", "),
        p.extra_sign as i32,
        p.truncation,
        float(p.guard_fraction),
        float(p.tolerance),
    )
}

pub fn spectrum_json(s: &SpectrumResult) -> String {
    let checked = !s.converged.is_empty();
    let converged = if checked {
        let flags: Vec<&str> = s.converged.iter().map(|&b| if b { "true" } else { "false" }).collect();
        format!("[{}]", flags.join(", "))
    } else {
        "null".into()
    };
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"command\": \"spectrum\",");
    let _ = writeln!(out, "  \"params\": {},", params_json(&s.params));
    let _ = writeln!(out, "  \"total_dimension\": {},", s.eigenvalues.len());
    let _ = writeln!(out, "  \"hermiticity_residual\": {},", float(s.hermiticity_residual));
    let _ = writeln!(out, "  \"eigen_residual\": {},", float(s.eigen_residual));
    let _ = writeln!(out, "  \"convergence_checked\": {checked},");
    let _ = writeln!(
        out,
        "  \"converged_count\": {},",
        if checked { s.converged_count.to_string() } else { "null".into() }
    );
    let _ = writeln!(out, "  \"eigenvalues\": {},", float_array(&s.eigenvalues));
    let _ = writeln!(out, "  \"converged\": {converged},");
    let _ = writeln!(out, "  \"positive_levels\": {}", float_array(&s.positive_levels(LEVEL_MERGE_TOL)));
    out.push_str("}\n");
    out
}

pub fn spectrum_csv(s: &SpectrumResult) -> String {
    let mut out = String::from("index,eigenvalue,converged\n");
    for (k, v) in s.eigenvalues.iter().enumerate() {
        let flag = match s.converged.get(k) {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        let _ = writeln!(out, "{k},{v:.16e},{flag}");
    }
    out
}

fn bound_json(b: &Bound) -> String {
    match b {
        Bound::AtMost(v) => format!("{{\"at_most\": {}}}", float(*v)),
        Bound::Above(v) => format!("{{\"above\": {}}}", float(*v)),
    }
}

/// `extra` holds pre-rendered `(key, json)` sections appended after `rows`.
pub fn report_json(command: &str, reports: &[CheckReport], extra: &[(&str, String)]) -> String {
    let passed = reports.iter().all(CheckReport::all_passed);
    let title: Vec<&str> = reports.iter().map(|r| r.title.as_str()).collect();
    let mut rows = Vec::new();
    for report in reports {
        for row in &report.rows {
            let body = match &row.kind {
                RowKind::Check { bound, passed } => format!(
                    "\"kind\": \"check\", \"value\": {}, \"bound\": {}, \"passed\": {passed}",
                    float(row.value),
                    bound_json(bound)
                ),
                RowKind::Finding { note } => format!(
                    "\"kind\": \"finding\", \"value\": {}, \"note\": {}",
                    float(row.value),
                    string(note)
                ),
            };
            rows.push(format!("    {{\"name\": {}, {body}}}", string(&row.name)));
        }
    }
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"command\": {},", string(command));
    let _ = writeln!(out, "  \"title\": {},", string(&title.join("; ")));
    let _ = writeln!(out, "  \"passed\": {passed},");
    let _ = write!(out, "  \"rows\": [\n{}\n  ]", rows.join(",\n"));
    for (key, json) in extra {
        let _ = write!(out, ",\n  {}: {json}", string(key));
    }
    out.push_str("\n}\n");
    out
}

pub fn report_csv(reports: &[CheckReport]) -> String {
    let mut out = String::from("name,kind,value,bound,status\n");
    let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    for report in reports {
        for row in &report.rows {
            let (kind, bound, status) = match &row.kind {
                RowKind::Check { bound, passed } => (
                    "check",
                    match bound {
                        Bound::AtMost(b) => format!("<= {b:e}"),
                        Bound::Above(b) => format!("> {b:e}"),
                    },
                    if *passed { "pass".to_string() } else { "fail".to_string() },
                ),
                RowKind::Finding { note } => ("finding", String::new(), note.clone()),
            };
            let _ = writeln!(
                out,
                "{},{kind},{:.16e},{},{}",
                quote(&row.name),
                row.value,
                quote(&bound),
                quote(&status)
            );
        }
    }
    out
}

pub fn report_text(reports: &[CheckReport], preamble: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(text) = preamble {
        out.push_str(text);
        if !text.ends_with('\n') {
            out.push('\n');
        }
    }
    for r in reports {
        out.push_str(&r.render_text());
    }
    out
}

/// Writes to `path`, or to stdout when the path is `-`.
pub fn write_to(path: &Path, contents: &str) -> Result<(), CliError> {
    if path.as_os_str() == "-" {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        lock.write_all(contents.as_bytes())
            .and_then(|_| lock.flush())
            .map_err(|e| CliError::Io(format!("stdout: {e}")))
    } else {
        std::fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}
