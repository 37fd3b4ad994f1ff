//! Small seeded graph generators for tests, examples and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::community::CommunityStructure;
use crate::graph::Graph;

/// Two triangles `{0,1,2}` and `{3,4,5}` joined by the edge `(2, 3)`, with
/// the triangles as communities.
pub fn bridged_triangles() -> (Graph, CommunityStructure) {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
        .expect("static edge list is valid");
    (g, CommunityStructure::from_assignment(&[0, 0, 0, 1, 1, 1]))
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::with_nodes(n);
    for u in 0..n {
        for v in u + 1..n {
            g.insert_edge(u, v).expect("ids in range");
        }
    }
    g
}

/// G(n, p) random graph.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_nodes(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.insert_edge(u, v).expect("ids in range");
            }
        }
    }
    g
}

/// Planted-partition graph: blocks of the given sizes, edge probability
/// `p_in` inside a block and `p_out` across blocks. Returns the graph and
/// the planted partition.
pub fn planted_partition(sizes: &[usize], p_in: f64, p_out: f64, seed: u64) -> (Graph, CommunityStructure) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let block: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
        .collect();
    let n = block.len();
    let mut g = Graph::with_nodes(n);
    for u in 0..n {
        for v in u + 1..n {
            let p = if block[u] == block[v] { p_in } else { p_out };
            if rng.gen_bool(p) {
                g.insert_edge(u, v).expect("ids in range");
            }
        }
    }
    (g, CommunityStructure::from_assignment(&block))
}

/// Uniformly random partition of `n` nodes into at most `k` communities.
pub fn random_partition(n: usize, k: usize, seed: u64) -> CommunityStructure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tags: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k.max(1))).collect();
    CommunityStructure::from_assignment(&tags)
}
