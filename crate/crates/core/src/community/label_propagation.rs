use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CommunityDetector, CommunityStructure};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_SWEEPS: usize = 100;

/// Asynchronous label propagation. Stand-in detector where a flow-based
/// method would otherwise be used.
#[derive(Clone, Copy, Debug, Default)]
pub struct LabelPropagation;

impl CommunityDetector for LabelPropagation {
    fn name(&self) -> &'static str {
        "labelprop"
    }

    fn detect(&self, g: &Graph, seed: u64) -> Result<CommunityStructure> {
        label_propagation(g, seed)
    }
}

/// Every node starts with its own label; sweeps visit nodes in a fresh
/// seeded shuffle and adopt the most frequent neighbor label. A node whose
/// label is already among the most frequent keeps it; otherwise ties are
/// broken by a seeded draw. Stops after a sweep with no change, or after
/// [`MAX_SWEEPS`].
pub fn label_propagation(g: &Graph, seed: u64) -> Result<CommunityStructure> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = g.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts = vec![0usize; n];
    let mut touched = Vec::new();
    let mut plural = Vec::new();

    for _ in 0..MAX_SWEEPS {
        order.shuffle(&mut rng);
        let mut changed = false;
        for &v in &order {
            if g.adj(v).is_empty() {
                continue;
            }
            for &w in g.adj(v) {
                let l = labels[w];
                if counts[l] == 0 {
                    touched.push(l);
                }
                counts[l] += 1;
            }
            let top = touched.iter().map(|&l| counts[l]).max().unwrap_or(0);
            if counts[labels[v]] != top {
                plural.extend(touched.iter().copied().filter(|&l| counts[l] == top));
                plural.sort_unstable();
                labels[v] = plural[rng.gen_range(0..plural.len())];
                plural.clear();
                changed = true;
            }
            for l in touched.drain(..) {
                counts[l] = 0;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(CommunityStructure::from_assignment(&labels))
}
