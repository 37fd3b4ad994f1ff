//! Modularity, coverage and performance before and after deception,
//! each on a partition detected afresh on its own graph.

use commhide::deception::neural;
use commhide::generate::planted_partition;
use commhide::harness::{compute_budget, metrics_csv};
use commhide::metrics::{GraphTag, MetricsRow};
use commhide::recovery::r_neural;
use commhide::Detector;

pub fn run(seed: u64) -> commhide::Result<Vec<MetricsRow>> {
    let (g, _) = planted_partition(&[16, 14, 12], 0.45, 0.05, 5);
    let cs = Detector::Louvain.detect(&g, seed)?;
    let budget = compute_budget(cs.members(0).len(), 0.3);
    let g1 = neural(&g, &cs, 0, budget)?.graph;
    let g2 = r_neural(&g1, &cs, 0, budget)?.graph;
    GraphTag::ALL
        .into_iter()
        .zip([&g, &g1, &g2])
        .map(|(tag, graph)| MetricsRow::evaluate(tag, graph, &Detector::Louvain.detect(graph, seed)?))
        .collect()
}

fn main() -> commhide::Result<()> {
    print!("{}", metrics_csv(&run(1)?));
    Ok(())
}
