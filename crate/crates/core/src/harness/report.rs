//! Plain-text and CSV renderings of a report.

use std::fmt::Write;

use super::ExperimentReport;
use crate::metrics::{GraphTag, MetricsRow};

/// Metric rows `M`, `C`, `PQ` by graph columns, plus the spectral distances.
pub fn text_table(report: &ExperimentReport) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{} ({}, seed {}, target {} of size {}, budget {})",
        report.dataset,
        report.config.detector,
        report.config.seed,
        report.target.community,
        report.target.size,
        report.target.budget
    )
    .unwrap();
    writeln!(out, "{:<10}{:>10}{:>10}{:>10}", "", "G", "G'", "G''").unwrap();
    for (name, pick) in metric_columns() {
        write!(out, "{name:<10}").unwrap();
        for tag in GraphTag::ALL {
            write!(out, "{:>10.4}", pick(report.row(tag))).unwrap();
        }
        out.push('\n');
    }
    writeln!(
        out,
        "{:<10}{:>10}{:>10.4}{:>10.4}",
        "sim(G,.)",
        "-",
        report.distance_deceived(),
        report.distance_recovered()
    )
    .unwrap();
    writeln!(
        out,
        "edits: {} deception, {} recovery",
        report.deception_log.len(),
        report.recovery_log.len()
    )
    .unwrap();
    for w in &report.warnings {
        writeln!(out, "warning: {w}").unwrap();
    }
    out
}

/// `metric,G,G',G''` with one row per metric.
pub fn metrics_csv(rows: &[MetricsRow]) -> String {
    let mut out = String::from("metric");
    for r in rows {
        write!(out, ",{}", r.graph.as_str()).unwrap();
    }
    out.push('\n');
    for (name, pick) in metric_columns() {
        out.push_str(name);
        for r in rows {
            write!(out, ",{}", pick(r)).unwrap();
        }
        out.push('\n');
    }
    out
}

pub(super) type Column = (&'static str, fn(&MetricsRow) -> f64);

pub(super) fn metric_columns() -> [Column; 3] {
    [
        ("M", |r| r.modularity),
        ("C", |r| r.coverage),
        ("PQ", |r| r.partition_quality),
    ]
}
