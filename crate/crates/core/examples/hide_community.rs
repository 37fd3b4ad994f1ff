//! Hide the largest detected community with NEURAL.
//!
//! Each iteration adds an edge towards the strongest external pull or
//! deletes an internal edge, whichever lowers graph permanence more.

use commhide::deception::{neural, DeceptionRun};
use commhide::generate::planted_partition;
use commhide::harness::compute_budget;
use commhide::{CommunityStructure, Detector, Graph};

pub fn run() -> commhide::Result<(Graph, CommunityStructure, DeceptionRun)> {
    let (g, _) = planted_partition(&[14, 12, 10], 0.5, 0.05, 3);
    let cs = Detector::Louvain.detect(&g, 1)?;
    let target = (0..cs.k()).max_by_key(|&c| (cs.members(c).len(), std::cmp::Reverse(c))).unwrap();
    let budget = compute_budget(cs.members(target).len(), 0.3);
    let run = neural(&g, &cs, target, budget)?;
    Ok((g, cs, run))
}

fn main() -> commhide::Result<()> {
    let (_, cs, run) = run()?;
    println!(
        "target community {} ({} nodes), budget {}",
        run.target,
        cs.members(run.target).len(),
        run.budget
    );
    println!("{}", run.log_json()?);
    println!("permanence {:.4} -> {:.4}", run.initial_permanence, run.final_permanence);
    Ok(())
}
