//! Detect, deceive, recover and evaluate in one call.
//!
//! `cargo run --example full_pipeline [graph] [detector] [seed]`
//!
//! A relative graph path is also looked up in `$COMMHIDE_DATA_DIR`.

use std::path::{Path, PathBuf};

use commhide::generate::planted_partition;
use commhide::graph::{write_graph, GraphFormat};
use commhide::harness::{run_pipeline, text_table, ExperimentConfig, ExperimentReport};
use commhide::Detector;

pub fn run(graph: &Path, detector: Detector, seed: u64) -> commhide::Result<ExperimentReport> {
    run_pipeline(&ExperimentConfig::new(graph, detector, seed))
}

fn demo_graph() -> commhide::Result<PathBuf> {
    let path = std::env::temp_dir().join("commhide-demo.gml");
    let (g, _) = planted_partition(&[20, 16, 14], 0.4, 0.04, 2);
    write_graph(&g, &path, GraphFormat::Gml)?;
    Ok(path)
}

fn main() -> commhide::Result<()> {
    let mut args = std::env::args().skip(1);
    let graph = match args.next() {
        Some(p) => PathBuf::from(p),
        None => demo_graph()?,
    };
    let detector: Detector = args.next().map_or(Ok(Detector::Louvain), |s| s.parse())?;
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let report = run(&graph, detector, seed)?;
    print!("{}", text_table(&report));
    Ok(())
}
