//! Hide a community, then restore it with R-NEURAL under the same budget.

use commhide::deception::{neural, DeceptionRun};
use commhide::generate::planted_partition;
use commhide::harness::compute_budget;
use commhide::recovery::{r_neural, RecoveryRun};
use commhide::Detector;

pub fn run() -> commhide::Result<(DeceptionRun, RecoveryRun)> {
    let (g, _) = planted_partition(&[12, 12, 12], 0.55, 0.04, 9);
    let cs = Detector::Louvain.detect(&g, 2)?;
    let target = 0;
    let budget = compute_budget(cs.members(target).len(), 0.3);
    let hidden = neural(&g, &cs, target, budget)?;
    let restored = r_neural(&hidden.graph, &cs, target, budget)?;
    Ok((hidden, restored))
}

fn main() -> commhide::Result<()> {
    let (hidden, restored) = run()?;
    println!(
        "G   {:.4}\nG'  {:.4} ({} edits)\nG'' {:.4} ({} edits)",
        hidden.initial_permanence,
        hidden.final_permanence,
        hidden.log.len(),
        restored.final_permanence,
        restored.log.len()
    );
    println!("{}", restored.log_json()?);
    Ok(())
}
