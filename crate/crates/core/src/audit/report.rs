use std::collections::BTreeMap;
use std::fmt::Write;

use super::{AuditError, AuditReport, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

pub fn render_report(report: &AuditReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out =
                serde_json::to_string_pretty(report).expect("report is always serializable");
            out.push('\n');
            out
        }
        ReportFormat::Markdown => render_markdown(report),
    }
}

fn render_markdown(report: &AuditReport) -> String {
    let mut out = String::new();
    let a_list: Vec<String> = report.grid.a_values.iter().map(|a| a.to_string()).collect();
    writeln!(out, "# Audit report\n").unwrap();
    writeln!(out, "- version: {}", report.version).unwrap();
    writeln!(out, "- timestamp: {}", report.timestamp).unwrap();
    writeln!(
        out,
        "- grid: n_max = {}; a in {{{}}}\n",
        report.grid.n_max,
        a_list.join(", ")
    )
    .unwrap();
    writeln!(out, "| id | status | cells | witness | lhs | rhs |").unwrap();
    writeln!(out, "|----|--------|-------|---------|-----|-----|").unwrap();
    for v in &report.verdicts {
        let (witness, lhs, rhs) = match &v.witness {
            Some(w) => (
                format!("n={}, a={}", w.n, w.a),
                w.lhs.as_str(),
                w.rhs.as_str(),
            ),
            None => ("-".to_string(), "-", "-"),
        };
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} |",
            v.id, v.status, v.cells, witness, lhs, rhs
        )
        .unwrap();
    }
    if !report.notes.is_empty() {
        writeln!(out, "\n## Notes\n").unwrap();
        for note in &report.notes {
            writeln!(out, "- {note}").unwrap();
        }
    }
    out
}

pub fn parse_report(json: &str) -> Result<AuditReport, AuditError> {
    Ok(serde_json::from_str(json)?)
}

/// Claim id -> status from either a full report or a bare
/// `{"C1": "refuted", ...}` expectation object.
pub fn statuses(json: &str) -> Result<BTreeMap<String, Status>, AuditError> {
    if let Ok(report) = parse_report(json) {
        return Ok(report.status_map());
    }
    Ok(serde_json::from_str(json)?)
}
