use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use selfrep_core::{Error, Result};

use crate::config::ReportFormat;
use crate::run::{DemoRecord, PointRecord, Summary, VerdictReport};

/// Fixed-width scientific rendering at 12 significant digits, used for
/// every floating-point value in both report formats so identical runs
/// serialize byte-identically.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

const POINT_FIELDS: &[&str] = &[
    "index",
    "a",
    "c",
    "theta",
    "q_mag",
    "q_phase",
    "r_mag",
    "r_phase",
    "p_re",
    "p_im",
    "q_re",
    "q_im",
    "r_re",
    "r_im",
    "alpha_re",
    "alpha_im",
    "beta_re",
    "beta_im",
    "linearity_fidelity",
    "linearity_expected",
    "linearity_residual",
    "trace_distance",
    "condition_class",
    "boundary",
    "lambda_before",
    "lambda_after",
    "gap",
    "gap_formula",
    "gap_residual",
    "entropy_before",
    "entropy_after",
    "closed_form_residual_before",
    "closed_form_residual_after",
    "eig_residual_before",
    "eig_residual_after",
    "pass",
];

const DEMO_FIELDS: &[&str] = &[
    "basis0_fidelity",
    "basis1_fidelity",
    "max_amplitude_error",
    "superposition_fidelity",
    "superposition_expected",
    "program_overlap_mag",
    "aux_blanks",
    "pass",
];

enum Value {
    Int(u64),
    Float(f64),
    Str(&'static str),
    Bool(bool),
}

impl Value {
    fn json(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => fmt_sig(*v),
            Value::Str(s) => format!("\"{s}\""),
            Value::Bool(b) => b.to_string(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Float(v) => fmt_sig(*v),
            Value::Str(s) => (*s).to_string(),
            Value::Bool(b) => b.to_string(),
        }
    }
}

fn point_values(p: &PointRecord) -> Vec<Value> {
    vec![
        Value::Int(p.index as u64),
        Value::Float(p.a),
        Value::Float(p.c),
        Value::Float(p.theta),
        Value::Float(p.q_mag),
        Value::Float(p.q_phase),
        Value::Float(p.r_mag),
        Value::Float(p.r_phase),
        Value::Float(p.p.re),
        Value::Float(p.p.im),
        Value::Float(p.q.re),
        Value::Float(p.q.im),
        Value::Float(p.r.re),
        Value::Float(p.r.im),
        Value::Float(p.alpha.re),
        Value::Float(p.alpha.im),
        Value::Float(p.beta.re),
        Value::Float(p.beta.im),
        Value::Float(p.linearity_fidelity),
        Value::Float(p.linearity_expected),
        Value::Float(p.linearity_residual),
        Value::Float(p.trace_distance),
        Value::Str(p.condition_class.as_str()),
        Value::Bool(p.boundary),
        Value::Float(p.lambda_before),
        Value::Float(p.lambda_after),
        Value::Float(p.gap),
        Value::Float(p.gap_formula),
        Value::Float(p.gap_residual),
        Value::Float(p.entropy_before),
        Value::Float(p.entropy_after),
        Value::Float(p.closed_form_residual_before),
        Value::Float(p.closed_form_residual_after),
        Value::Float(p.eig_residual_before),
        Value::Float(p.eig_residual_after),
        Value::Bool(p.pass),
    ]
}

fn demo_values(d: &DemoRecord) -> Vec<Value> {
    vec![
        Value::Float(d.basis0_fidelity),
        Value::Float(d.basis1_fidelity),
        Value::Float(d.max_amplitude_error),
        Value::Float(d.superposition_fidelity),
        Value::Float(d.superposition_expected),
        Value::Float(d.program_overlap_mag),
        Value::Int(d.aux_blanks as u64),
        Value::Bool(d.pass),
    ]
}

fn summary_fields(s: &Summary) -> Vec<(&'static str, Value)> {
    vec![
        ("mode", Value::Str(s.mode.as_str())),
        ("seed", Value::Int(s.seed)),
        ("tol", Value::Float(s.tol)),
        ("m", Value::Int(s.aux_blanks as u64)),
        ("n", Value::Int(s.total_blanks as u64)),
        ("total_points", Value::Int(s.total_points as u64)),
        ("orthogonal_states", Value::Int(s.orthogonal_states as u64)),
        (
            "orthogonal_programs",
            Value::Int(s.orthogonal_programs as u64),
        ),
        ("degenerate", Value::Int(s.degenerate as u64)),
        ("violation", Value::Int(s.violation as u64)),
        ("boundary_points", Value::Int(s.boundary_points as u64)),
        (
            "max_closed_form_residual",
            Value::Float(s.max_closed_form_residual),
        ),
        (
            "max_eigenvalue_residual",
            Value::Float(s.max_eigenvalue_residual),
        ),
        ("max_gap_residual", Value::Float(s.max_gap_residual)),
        (
            "max_linearity_residual",
            Value::Float(s.max_linearity_residual),
        ),
        ("pass", Value::Bool(s.pass)),
    ]
}

fn render_json(report: &VerdictReport) -> String {
    let mut out = String::with_capacity(256 + report.points.len() * 1024);
    out.push_str("{\n  \"summary\": {");
    let summary = summary_fields(&report.summary);
    for (i, (key, value)) in summary.iter().enumerate() {
        let sep = if i == 0 { "" } else { "," };
        let _ = write!(out, "{sep}\n    \"{key}\": {}", value.json());
    }
    out.push_str("\n  },\n  \"points\": [");
    for (pi, point) in report.points.iter().enumerate() {
        let sep = if pi == 0 { "" } else { "," };
        let _ = write!(out, "{sep}\n    {{");
        for (i, (key, value)) in POINT_FIELDS.iter().zip(point_values(point)).enumerate() {
            let sep = if i == 0 { "" } else { ", " };
            let _ = write!(out, "{sep}\"{key}\": {}", value.json());
        }
        out.push('}');
    }
    if report.points.is_empty() {
        out.push(']');
    } else {
        out.push_str("\n  ]");
    }
    if let Some(demo) = &report.demo {
        out.push_str(",\n  \"demo\": {");
        for (i, (key, value)) in DEMO_FIELDS.iter().zip(demo_values(demo)).enumerate() {
            let sep = if i == 0 { "" } else { ", " };
            let _ = write!(out, "{sep}\"{key}\": {}", value.json());
        }
        out.push('}');
    }
    out.push_str("\n}\n");
    out
}

fn render_csv(report: &VerdictReport) -> String {
    let mut out = String::new();
    if let Some(demo) = &report.demo {
        out.push_str(&DEMO_FIELDS.join(","));
        out.push('\n');
        let row: Vec<String> = demo_values(demo).iter().map(Value::csv).collect();
        out.push_str(&row.join(","));
        out.push('\n');
        return out;
    }
    out.push_str(&POINT_FIELDS.join(","));
    out.push('\n');
    for point in &report.points {
        let row: Vec<String> = point_values(point).iter().map(Value::csv).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn render(report: &VerdictReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => render_json(report),
        ReportFormat::Csv => render_csv(report),
    }
}

/// Writes the report to `out`, or stdout when absent. File output goes
/// through a sibling temp file and a rename; a failed write never leaves a
/// partial report behind.
pub fn emit_report(
    report: &VerdictReport,
    format: ReportFormat,
    out: Option<&Path>,
) -> Result<()> {
    let text = render(report, format);
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".tmp");
            let tmp = std::path::PathBuf::from(tmp);
            if let Err(e) = fs::write(&tmp, &text) {
                let _ = fs::remove_file(&tmp);
                return Err(Error::resource(format!(
                    "cannot write report to {}: {e}",
                    path.display()
                )));
            }
            if let Err(e) = fs::rename(&tmp, path) {
                let _ = fs::remove_file(&tmp);
                return Err(Error::resource(format!(
                    "cannot move report into place at {}: {e}",
                    path.display()
                )));
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_sig_is_twelve_significant_digits() {
        assert_eq!(fmt_sig(0.5), "5.00000000000e-1");
        assert_eq!(fmt_sig(0.109375), "1.09375000000e-1");
        assert_eq!(fmt_sig(0.0), "0.00000000000e0");
        assert_eq!(fmt_sig(-2.0), "-2.00000000000e0");
        // parse-back reproduces the rounded value
        let x = 0.11427669529663688;
        let parsed: f64 = fmt_sig(x).parse().unwrap();
        assert!((parsed - x).abs() < 1e-12);
        assert_eq!(fmt_sig(parsed), fmt_sig(x));
    }

    #[test]
    fn field_lists_stay_in_sync() {
        use crate::config::{Mode, RunConfig};
        use crate::run::run_verification;
        let report = run_verification(&RunConfig::default()).unwrap();
        assert_eq!(point_values(&report.points[0]).len(), POINT_FIELDS.len());
        let demo_report = run_verification(&RunConfig {
            mode: Mode::Demo,
            ..RunConfig::default()
        })
        .unwrap();
        assert_eq!(
            demo_values(demo_report.demo.as_ref().unwrap()).len(),
            DEMO_FIELDS.len()
        );
    }
}
