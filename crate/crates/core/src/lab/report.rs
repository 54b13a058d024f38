//! Deterministic CSV reports.
//!
//! Layout: `#` lines naming the experiment and its configuration, one column
//! header line, the data rows in canonical order, then `#` summary and
//! violation lines. Numbers use 12 significant digits in scientific form.

use std::fmt::Write as _;
use std::path::Path;

use super::{ComparisonReport, DivergenceConfig, DivergenceRow, SweepConfig, SweepReport, SweepRow, Violation};
use crate::{Error, Result};

/// A rendered-ready table.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub title: String,
    pub config: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Summary lines, omitted when there are no rows.
    pub summary: Vec<(String, String)>,
    pub violations: Vec<Violation>,
}

pub(crate) fn num(v: f64) -> String {
    if v == 0.0 {
        // also folds -0
        return format!("{:.11e}", 0.0);
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.11e}")
}

fn sweep_cells(r: &SweepRow) -> Vec<String> {
    [r.x, r.y, r.d_v, r.d_l_lower, r.d_t_est, r.delta, r.d_l_identity]
        .map(num)
        .to_vec()
}

const SWEEP_COLUMNS: [&str; 7] = ["x", "y", "d_v", "d_l_lower", "d_t_est", "delta", "d_l_identity"];

impl Report {
    pub fn sweep(report: &SweepReport, cfg: &SweepConfig) -> Self {
        let s = &report.summary;
        let summary = vec![
            ("rows".into(), s.rows.to_string()),
            ("max_delta".into(), num(s.max_delta)),
            ("max_delta_dv_ge_2".into(), num(s.max_delta_far)),
            ("max_delta_dv_lt_2".into(), num(s.max_delta_near)),
            ("delta_slope".into(), num(s.delta_slope)),
            ("max_undercut".into(), num(s.max_undercut)),
            ("undercuts".into(), s.undercuts.len().to_string()),
            ("estimate_violations".into(), s.estimate_violations.len().to_string()),
        ];
        // Undercuts are data, not failures; they are listed with the
        // violations so nothing is dropped.
        let mut violations = s.estimate_violations.clone();
        violations.extend(s.undercuts.iter().cloned());
        Self {
            title: "sweep".into(),
            config: cfg.to_string(),
            columns: SWEEP_COLUMNS.to_vec(),
            rows: report.rows.iter().map(sweep_cells).collect(),
            summary,
            violations,
        }
    }

    pub fn comparison(report: &ComparisonReport, cfg: &SweepConfig) -> Self {
        Self {
            title: "compare".into(),
            config: cfg.to_string(),
            columns: SWEEP_COLUMNS.to_vec(),
            rows: report.rows.iter().map(sweep_cells).collect(),
            summary: vec![
                ("rows".into(), report.rows.len().to_string()),
                ("max_zero_twist_error".into(), num(report.max_zero_twist_error)),
                ("max_gap_dt_minus_dl".into(), num(report.max_gap)),
            ],
            violations: report.violations.clone(),
        }
    }

    pub fn divergence(rows: &[DivergenceRow], cfg: &DivergenceConfig) -> Self {
        Self {
            title: "diverge".into(),
            config: cfg.to_string(),
            columns: vec!["n", "length", "twists", "d_ls_lower", "d_t_est", "ratio", "moduli_lower"],
            rows: rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        num(r.length),
                        r.twists.to_string(),
                        num(r.d_ls_lower),
                        num(r.d_t_est),
                        num(r.ratio),
                        num(r.moduli_lower),
                    ]
                })
                .collect(),
            summary: vec![("rows".into(), rows.len().to_string())],
            violations: Vec::new(),
        }
    }

    /// Whether the report lists any property violation. Sweep undercuts
    /// count only through their own criterion, not here.
    pub fn has_violations(&self) -> bool {
        self.violations.iter().any(|v| v.kind != "undercut")
    }
}

pub fn render_report(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", report.title);
    let _ = writeln!(out, "# config: {}", report.config);
    let _ = writeln!(out, "{}", report.columns.join(","));
    if report.rows.is_empty() {
        return out;
    }
    for row in &report.rows {
        let _ = writeln!(out, "{}", row.join(","));
    }
    for (k, v) in &report.summary {
        let _ = writeln!(out, "# summary: {k} = {v}");
    }
    for v in &report.violations {
        let _ = writeln!(
            out,
            "# violation: {} x={} y={} amount={}",
            v.kind,
            num(v.x),
            num(v.y),
            num(v.amount)
        );
    }
    out
}

/// Writes the rendered report to `path`, or returns it when `path` is
/// `None`.
pub fn emit_report(report: &Report, path: Option<&Path>) -> Result<String> {
    let text = render_report(report);
    if let Some(p) = path {
        std::fs::write(p, &text).map_err(|source| Error::Io {
            path: p.display().to_string(),
            source,
        })?;
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(num(0.5), "5.00000000000e-1");
        assert_eq!(num(-0.0), num(0.0));
        assert_eq!(num(f64::INFINITY), "inf");
        assert_eq!(num(1.0 / 3.0), "3.33333333333e-1");
    }

    #[test]
    fn empty_report_is_header_only() {
        let cfg = SweepConfig::default();
        let rep = SweepReport {
            rows: Vec::new(),
            summary: super::super::summarize(&[], 1.0),
        };
        let text = render_report(&Report::sweep(&rep, &cfg));
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().take(2).all(|l| l.starts_with('#')));
    }

    #[test]
    fn io_errors_name_the_path() {
        let cfg = DivergenceConfig::default();
        let rep = Report::divergence(&[], &cfg);
        let err = emit_report(&rep, Some(Path::new("/nonexistent/dir/out.csv"))).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/out.csv"), "{err}");
    }
}
