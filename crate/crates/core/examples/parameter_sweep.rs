//! Sweep seeds and detectors over several graphs in parallel and print the
//! aggregate CSV. Failing runs are reported without stopping the others.

use std::path::Path;

use commhide::generate::planted_partition;
use commhide::graph::{write_graph, GraphFormat};
use commhide::harness::{sweep, ExperimentConfig, SweepResult};
use commhide::Detector;

pub fn run(dir: &Path, seeds: std::ops::Range<u64>) -> commhide::Result<SweepResult> {
    let mut configs = Vec::new();
    for (name, sizes) in [("three.gml", &[12, 12, 12][..]), ("two.txt", &[18, 14][..])] {
        let path = dir.join(name);
        write_graph(&planted_partition(sizes, 0.45, 0.05, 4).0, &path, GraphFormat::from_path(&path))?;
        for detector in Detector::ALL {
            configs.extend(seeds.clone().map(|s| ExperimentConfig::new(&path, detector, s)));
        }
    }
    Ok(sweep(&configs))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("commhide-sweep");
    std::fs::create_dir_all(&dir)?;
    let result = run(&dir, 1..6)?;
    print!("{}", result.aggregate_csv());
    for f in &result.failures {
        eprintln!("run {} on {} failed: {}", f.index, f.dataset, f.message);
    }
    Ok(())
}
