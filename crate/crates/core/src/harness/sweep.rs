//! Many configurations at once, in parallel, with per-run error isolation.

use std::collections::BTreeMap;
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use super::report::metric_columns;
use super::{run_pipeline, ExperimentConfig, ExperimentReport};
use crate::metrics::GraphTag;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepFailure {
    pub index: usize,
    pub dataset: String,
    pub kind: &'static str,
    pub message: String,
}

/// One outcome per input configuration, in input order.
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub reports: Vec<ExperimentReport>,
    pub failures: Vec<SweepFailure>,
}

pub fn sweep(configs: &[ExperimentConfig]) -> SweepResult {
    let outcomes: Vec<_> = configs.par_iter().map(run_pipeline).collect();
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for (index, (outcome, config)) in outcomes.into_iter().zip(configs).enumerate() {
        match outcome {
            Ok(r) => reports.push(r),
            Err(e) => failures.push(SweepFailure {
                index,
                dataset: config.dataset_name(),
                kind: e.kind(),
                message: e.to_string(),
            }),
        }
    }
    SweepResult { reports, failures }
}

const COLUMN_TAGS: [(GraphTag, &str); 3] = [
    (GraphTag::Original, "G"),
    (GraphTag::Deceived, "G1"),
    (GraphTag::Recovered, "G2"),
];

fn values(r: &ExperimentReport) -> Vec<f64> {
    let mut v = Vec::new();
    for (_, pick) in metric_columns() {
        for (tag, _) in COLUMN_TAGS {
            v.push(pick(r.row(tag)));
        }
    }
    v.push(r.distance_deceived());
    v.push(r.distance_recovered());
    v.push(r.deception_log.len() as f64);
    v.push(r.recovery_log.len() as f64);
    v
}

fn value_names() -> Vec<String> {
    let mut names = Vec::new();
    for (metric, _) in metric_columns() {
        for (_, col) in COLUMN_TAGS {
            names.push(format!("{metric}_{col}"));
        }
    }
    names.extend(["dist_G_G1", "dist_G_G2", "edits_deception", "edits_recovery"].map(String::from));
    names
}

impl SweepResult {
    /// One `run` row per report, then one `group` row per `(dataset,
    /// detector)` holding the seed means, with population standard
    /// deviations in the `_std` columns. `G1` is `G'`, `G2` is `G''`.
    pub fn aggregate_csv(&self) -> String {
        let mut out = String::from("kind,dataset,detector,seed,runs");
        for name in value_names() {
            write!(out, ",{name},{name}_std").unwrap();
        }
        out.push('\n');
        let mut groups: BTreeMap<(String, &'static str), Vec<Vec<f64>>> = BTreeMap::new();
        for r in &self.reports {
            let v = values(r);
            write!(out, "run,{},{},{},1", r.dataset, r.config.detector, r.config.seed).unwrap();
            for x in &v {
                write!(out, ",{x},").unwrap();
            }
            out.push('\n');
            groups
                .entry((r.dataset.clone(), r.config.detector.name()))
                .or_default()
                .push(v);
        }
        for ((dataset, detector), rows) in &groups {
            let (mean, std) = mean_std(rows);
            write!(out, "group,{dataset},{detector},,{}", rows.len()).unwrap();
            for (m, s) in mean.iter().zip(&std) {
                write!(out, ",{m},{s}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Column means and population standard deviations.
fn mean_std(rows: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = rows.len() as f64;
    let width = rows[0].len();
    let mean: Vec<f64> = (0..width).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n).collect();
    let std = (0..width)
        .map(|j| (rows.iter().map(|r| (r[j] - mean[j]).powi(2)).sum::<f64>() / n).sqrt())
        .collect();
    (mean, std)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_std() {
        let (m, s) = mean_std(&[vec![1.0, 5.0], vec![3.0, 5.0]]);
        assert_eq!(m, vec![2.0, 5.0]);
        assert_eq!(s, vec![1.0, 0.0]);
    }

    #[test]
    fn column_names_match_values() {
        assert_eq!(value_names().len(), 13);
        assert_eq!(value_names()[0], "M_G");
        assert_eq!(value_names()[8], "PQ_G2");
    }
}
