//! Two-phase Louvain modularity optimization.
//!
//! Each level runs local moving over a seeded shuffle of the (super)nodes
//! until a full pass makes no move, then collapses communities into
//! supernodes. A node only leaves its community for a strictly better gain;
//! equal gains among other communities go to the smallest community index.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CommunityDetector, CommunityStructure};
use crate::error::{Error, Result};
use crate::graph::Graph;

const GAIN_EPS: f64 = 1e-12;
const MAX_PASSES: usize = 1000;

#[derive(Clone, Copy, Debug, Default)]
pub struct Louvain;

impl CommunityDetector for Louvain {
    fn name(&self) -> &'static str {
        "louvain"
    }

    fn detect(&self, g: &Graph, seed: u64) -> Result<CommunityStructure> {
        louvain(g, seed)
    }
}

/// Weighted graph over supernodes. `inner[i]` is the weight of edges
/// collapsed inside supernode `i`, each counted once.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    inner: Vec<f64>,
    degree: Vec<f64>,
}

impl Level {
    fn from_graph(g: &Graph) -> Self {
        let adj: Vec<Vec<(usize, f64)>> = g
            .nodes()
            .map(|v| g.adj(v).iter().map(|&w| (w, 1.0)).collect())
            .collect();
        let degree = adj.iter().map(|a| a.len() as f64).collect();
        Self {
            inner: vec![0.0; adj.len()],
            adj,
            degree,
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Local moving phase. Returns per-node community tags and whether any
    /// node moved.
    fn local_moving(&self, two_m: f64, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
        let n = self.len();
        let mut comm: Vec<usize> = (0..n).collect();
        let mut total: Vec<f64> = self.degree.clone();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);

        let mut weight_to = vec![0.0; n];
        let mut touched: Vec<usize> = Vec::new();
        let mut improved = false;

        for _ in 0..MAX_PASSES {
            let mut moved = false;
            for &i in &order {
                let own = comm[i];
                let k_i = self.degree[i];
                for &(j, w) in &self.adj[i] {
                    let c = comm[j];
                    if weight_to[c] == 0.0 {
                        touched.push(c);
                    }
                    weight_to[c] += w;
                }
                total[own] -= k_i;

                let gain = |c: usize, w: f64| w - total[c] * k_i / two_m;
                let own_gain = gain(own, weight_to[own]);
                let mut best: Option<(usize, f64)> = None;
                for &c in &touched {
                    if c == own {
                        continue;
                    }
                    let g_c = gain(c, weight_to[c]);
                    best = match best {
                        Some((bc, bg)) if g_c < bg - GAIN_EPS => Some((bc, bg)),
                        Some((bc, bg)) if g_c <= bg + GAIN_EPS && bc < c => Some((bc, bg)),
                        _ => Some((c, g_c)),
                    };
                }
                let target = match best {
                    Some((c, g_c)) if g_c > own_gain + GAIN_EPS => c,
                    _ => own,
                };

                total[target] += k_i;
                if target != own {
                    comm[i] = target;
                    moved = true;
                    improved = true;
                }
                for c in touched.drain(..) {
                    weight_to[c] = 0.0;
                }
            }
            if !moved {
                break;
            }
        }
        (comm, improved)
    }

    /// Collapses communities (tags already renumbered `0..k`) into supernodes.
    fn aggregate(&self, tags: &[usize], k: usize) -> Level {
        let mut inner = vec![0.0; k];
        let mut degree = vec![0.0; k];
        let mut links: Vec<std::collections::BTreeMap<usize, f64>> = vec![Default::default(); k];
        for i in 0..self.len() {
            let c = tags[i];
            inner[c] += self.inner[i];
            degree[c] += self.degree[i];
            for &(j, w) in &self.adj[i] {
                let d = tags[j];
                if c == d {
                    // each internal link is seen from both ends
                    inner[c] += w / 2.0;
                } else {
                    *links[c].entry(d).or_insert(0.0) += w;
                }
            }
        }
        Level {
            adj: links.into_iter().map(|m| m.into_iter().collect()).collect(),
            inner,
            degree,
        }
    }
}

fn renumber(tags: &[usize]) -> (Vec<usize>, usize) {
    let mut remap = vec![usize::MAX; tags.len()];
    let mut next = 0;
    let out = tags
        .iter()
        .map(|&t| {
            if remap[t] == usize::MAX {
                remap[t] = next;
                next += 1;
            }
            remap[t]
        })
        .collect();
    (out, next)
}

/// Runs Louvain with node visiting order drawn from `seed`.
pub fn louvain(g: &Graph, seed: u64) -> Result<CommunityStructure> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if g.edge_count() == 0 {
        return Ok(CommunityStructure::singletons(g.node_count()));
    }
    let two_m = 2.0 * g.edge_count() as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut level = Level::from_graph(g);
    let mut membership: Vec<usize> = g.nodes().collect();

    loop {
        let (tags, improved) = level.local_moving(two_m, &mut rng);
        if !improved {
            break;
        }
        let (tags, k) = renumber(&tags);
        for m in membership.iter_mut() {
            *m = tags[*m];
        }
        if k == level.len() || k == 1 {
            break;
        }
        level = level.aggregate(&tags, k);
    }
    Ok(CommunityStructure::from_assignment(&membership))
}
