//! Every example's `run` is exercised here.

#[allow(dead_code)]
#[path = "../examples/detect_communities.rs"]
mod detect_communities;
#[allow(dead_code)]
#[path = "../examples/vertex_permanence.rs"]
mod vertex_permanence;
#[allow(dead_code)]
#[path = "../examples/hide_community.rs"]
mod hide_community;
#[allow(dead_code)]
#[path = "../examples/recover_community.rs"]
mod recover_community;
#[allow(dead_code)]
#[path = "../examples/evaluate_metrics.rs"]
mod evaluate_metrics;
#[allow(dead_code)]
#[path = "../examples/spectral_similarity.rs"]
mod spectral_similarity;
#[allow(dead_code)]
#[path = "../examples/full_pipeline.rs"]
mod full_pipeline;
#[allow(dead_code)]
#[path = "../examples/parameter_sweep.rs"]
mod parameter_sweep;

use commhide::generate::planted_partition;
use commhide::metrics::GraphTag;
use commhide::{replay, Detector};

#[test]
fn detect_communities_finds_planted_blocks() {
    let (g, planted) = planted_partition(&[12, 10, 8], 0.6, 0.05, 7);
    for (_, cs, m) in detect_communities::run(&g, 1).unwrap() {
        assert_eq!(cs, planted);
        assert!(m > 0.4);
    }
}

#[test]
fn vertex_permanence_of_bridged_triangles() {
    let (per_vertex, mean, csv) = vertex_permanence::run().unwrap();
    let two_thirds = per_vertex.iter().filter(|&&p| p == 2.0 / 3.0).count();
    assert_eq!(two_thirds, 2);
    assert_eq!(per_vertex.iter().filter(|&&p| p == 1.0).count(), 4);
    assert!((mean - 8.0 / 9.0).abs() < 1e-15);
    assert_eq!(csv.lines().count(), 8);
}

#[test]
fn hide_community_lowers_permanence() {
    let (g, _, run) = hide_community::run().unwrap();
    assert!(run.final_permanence < run.initial_permanence);
    assert!(run.log.len() <= run.budget);
    assert_eq!(replay(&g, run.updates()).unwrap(), run.graph);
}

#[test]
fn recover_community_raises_permanence_again() {
    let (hidden, restored) = recover_community::run().unwrap();
    assert!(restored.final_permanence > hidden.final_permanence);
    assert!(restored.log.len() <= hidden.budget);
}

#[test]
fn evaluate_metrics_has_three_rows() {
    let rows = evaluate_metrics::run(1).unwrap();
    assert_eq!(rows.iter().map(|r| r.graph).collect::<Vec<_>>(), GraphTag::ALL);
    assert!(rows[1].modularity < rows[0].modularity);
}

#[test]
fn spectral_similarity_recovered_is_closer() {
    let (deceived, recovered) = spectral_similarity::run(0.9).unwrap();
    assert!(recovered.value < deceived.value);
    assert_eq!(deceived.k, recovered.k);
}

#[test]
fn full_pipeline_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.gml");
    let (g, _) = planted_partition(&[20, 16, 14], 0.4, 0.04, 2);
    commhide::graph::write_graph(&g, &path, commhide::GraphFormat::Gml).unwrap();
    let report = full_pipeline::run(&path, Detector::Louvain, 1).unwrap();
    assert_eq!(report.dataset, "g");
    assert_eq!(report.metrics.len(), 3);
    assert!(commhide::harness::text_table(&report).contains("PQ"));
}

#[test]
fn parameter_sweep_covers_the_grid() {
    let dir = tempfile::tempdir().unwrap();
    let result = parameter_sweep::run(dir.path(), 1..3).unwrap();
    assert_eq!(result.reports.len(), 8);
    assert!(result.failures.is_empty());
    assert_eq!(result.aggregate_csv().lines().filter(|l| l.starts_with("group,")).count(), 4);
}
