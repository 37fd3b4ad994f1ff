//! Detect communities with both detectors.
//!
//! `cargo run --example detect_communities [graph.gml|edges.txt] [seed]`
//!
//! Without a path, a three-block planted graph is used.

use std::path::Path;

use commhide::generate::planted_partition;
use commhide::graph::{read_graph, GraphFormat};
use commhide::metrics::modularity;
use commhide::{CommunityStructure, Detector, Graph};

pub fn run(g: &Graph, seed: u64) -> commhide::Result<Vec<(Detector, CommunityStructure, f64)>> {
    Detector::ALL
        .into_iter()
        .map(|d| {
            let cs = d.detect(g, seed)?;
            let m = modularity(g, &cs)?;
            Ok((d, cs, m))
        })
        .collect()
}

fn main() -> commhide::Result<()> {
    let mut args = std::env::args().skip(1);
    let g = match args.next() {
        Some(p) => read_graph(Path::new(&p), GraphFormat::from_path(Path::new(&p)))?,
        None => planted_partition(&[12, 10, 8], 0.6, 0.05, 7).0,
    };
    let seed = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    for (detector, cs, m) in run(&g, seed)? {
        println!("{detector}: {} communities, modularity {m:.4}", cs.k());
        for members in cs.communities() {
            let labels: Vec<&str> = members.iter().map(|&v| g.label(v)).collect();
            println!("  {}", labels.join(" "));
        }
    }
    Ok(())
}
