//! Test-only oracles. Nothing here calls into the library's scoring code;
//! graphs are copied into dense matrices and everything is recomputed from
//! the definitions, in exact rational arithmetic where it matters.

#![allow(dead_code)]

use commhide::{CommunityStructure, Graph};
use num_rational::BigRational;
use num_traits::Zero;

/// Dense symmetric adjacency copied out of a [`Graph`].
#[derive(Clone, Debug)]
pub struct Dense {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
    pub labels: Vec<String>,
}

impl Dense {
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.node_count();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Self {
            n,
            adj,
            labels: g.labels().to_vec(),
        }
    }

    pub fn toggle(&mut self, u: usize, v: usize) {
        self.adj[u][v] = !self.adj[u][v];
        self.adj[v][u] = !self.adj[v][u];
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&x| x).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }
}

fn ratio(a: usize, b: usize) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// `(I, E_max, deg, links among internal neighbours)` for `v`.
pub fn raw_parts(d: &Dense, assignment: &[usize], v: usize) -> (usize, usize, usize, usize) {
    let own = assignment[v];
    let neighbours: Vec<usize> = (0..d.n).filter(|&w| d.adj[v][w]).collect();
    let internal: Vec<usize> = neighbours.iter().copied().filter(|&w| assignment[w] == own).collect();
    let k = assignment.iter().max().map_or(0, |m| m + 1);
    let mut external = vec![0usize; k];
    for &w in &neighbours {
        if assignment[w] != own {
            external[assignment[w]] += 1;
        }
    }
    let e_max = external.into_iter().max().unwrap_or(0);
    let mut links = 0;
    for (i, &a) in internal.iter().enumerate() {
        for &b in &internal[i + 1..] {
            if d.adj[a][b] {
                links += 1;
            }
        }
    }
    (internal.len(), e_max, neighbours.len(), links)
}

pub fn exact_permanence(d: &Dense, assignment: &[usize], v: usize) -> BigRational {
    let (i, e, deg, links) = raw_parts(d, assignment, v);
    if deg == 0 {
        return ratio(0, 1);
    }
    let c_in = if i < 2 { ratio(0, 1) } else { ratio(links, i * (i - 1) / 2) };
    ratio(i, e.max(1) * deg) - (ratio(1, 1) - c_in)
}

pub fn float_permanence(d: &Dense, assignment: &[usize], v: usize) -> f64 {
    let (i, e, deg, links) = raw_parts(d, assignment, v);
    if deg == 0 {
        return 0.0;
    }
    let c_in = if i < 2 {
        0.0
    } else {
        links as f64 / (i * (i - 1) / 2) as f64
    };
    i as f64 / (e.max(1) * deg) as f64 - (1.0 - c_in)
}

/// `n` times graph permanence, exactly.
pub fn exact_permanence_sum(d: &Dense, assignment: &[usize]) -> BigRational {
    (0..d.n).fold(ratio(0, 1), |acc, v| acc + exact_permanence(d, assignment, v))
}

pub fn float_graph_permanence(d: &Dense, assignment: &[usize]) -> f64 {
    (0..d.n).map(|v| float_permanence(d, assignment, v)).sum::<f64>() / d.n as f64
}

pub fn assignment_of(cs: &CommunityStructure) -> Vec<usize> {
    cs.assignment().to_vec()
}

/// Brute-force greedy edit sequence. `hide` selects the deception edit
/// families (inter additions, intra deletions) and loss scoring; otherwise
/// inter deletions and intra additions scored by gain. Returns
/// `(add, u, v)` triples in the order applied.
pub fn brute_force_greedy(
    g: &Graph,
    assignment: &[usize],
    target: usize,
    budget: usize,
    hide: bool,
) -> Vec<(bool, usize, usize)> {
    let mut d = Dense::from_graph(g);
    let members: Vec<usize> = (0..d.n).filter(|&v| assignment[v] == target).collect();
    let k = assignment.iter().max().unwrap() + 1;
    let mut applied = Vec::new();

    // improvement of moving from `before` to `after` under the run's objective
    let improvement = |before: &BigRational, after: &BigRational| {
        if hide {
            before - after
        } else {
            after - before
        }
    };

    for _ in 0..budget {
        // inter-community family
        let mut inter: Vec<(usize, usize)> = Vec::new();
        for &u in &members {
            let mut counts = vec![0usize; k];
            for w in 0..d.n {
                if d.adj[u][w] && assignment[w] != target {
                    counts[assignment[w]] += 1;
                }
            }
            let best = *counts.iter().max().unwrap();
            if best == 0 {
                continue;
            }
            let pull = counts.iter().position(|&c| c == best).unwrap();
            for v in 0..d.n {
                if assignment[v] == pull && d.adj[u][v] != hide {
                    inter.push((u, v));
                }
            }
        }
        // intra-community family, smaller label first
        let mut intra: Vec<(usize, usize)> = Vec::new();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if d.adj[a][b] == hide {
                    let pair = if d.labels[a] <= d.labels[b] { (a, b) } else { (b, a) };
                    intra.push(pair);
                }
            }
        }

        let pick = |pairs: &[(usize, usize)], d: &Dense| -> Option<(usize, usize)> {
            let mut best: Option<((usize, usize), BigRational)> = None;
            for &(u, v) in pairs {
                let before = exact_permanence(d, assignment, u);
                let mut t = d.clone();
                t.toggle(u, v);
                let after = exact_permanence(&t, assignment, u);
                let score = improvement(&before, &after);
                let better = match &best {
                    None => true,
                    Some(((bu, bv), bs)) => {
                        score > *bs
                            || (score == *bs
                                && (&d.labels[u], &d.labels[v]) < (&d.labels[*bu], &d.labels[*bv]))
                    }
                };
                if better {
                    best = Some(((u, v), score));
                }
            }
            best.map(|(p, _)| p)
        };

        let total_before = exact_permanence_sum(&d, assignment);
        let graph_gain = |pair: Option<(usize, usize)>| {
            pair.map(|(u, v)| {
                let mut t = d.clone();
                t.toggle(u, v);
                improvement(&total_before, &exact_permanence_sum(&t, assignment))
            })
        };
        let a = pick(&inter, &d);
        let b = pick(&intra, &d);
        let (ga, gb) = (graph_gain(a), graph_gain(b));
        let zero = ratio(0, 1);
        let chosen = match (a, &ga, b, &gb) {
            (Some(p), Some(x), _, y) if *x > zero && y.as_ref().is_none_or(|y| x >= y) => p,
            (_, _, Some(p), Some(y)) if *y > zero => p,
            _ => break,
        };
        // additions are the toggles of non-edges
        let add = !d.adj[chosen.0][chosen.1];
        d.toggle(chosen.0, chosen.1);
        applied.push((add, chosen.0, chosen.1));
    }
    applied
}

/// A seeded greedy instance: graph, partition, target and budget.
pub struct Instance {
    pub seed: u64,
    pub graph: Graph,
    pub partition: CommunityStructure,
    pub target: usize,
    pub budget: usize,
}

/// Mix of planted-partition and dense random graphs with `n <= 30`.
pub fn greedy_instance(seed: u64) -> Instance {
    use commhide::generate::{erdos_renyi, planted_partition, random_partition};
    let n = 8 + (seed as usize * 7) % 23;
    let (graph, partition) = if seed.is_multiple_of(3) {
        let g = erdos_renyi(n, 0.25, seed);
        (g, random_partition(n, 2 + seed as usize % 3, seed ^ 0xabcd))
    } else {
        let k = 2 + seed as usize % 3;
        let mut sizes = vec![n / k; k];
        sizes[0] += n % k;
        planted_partition(&sizes, 0.6, 0.12, seed)
    };
    let mut target = seed as usize % partition.k();
    while partition.members(target).len() < 2 {
        target = (target + 1) % partition.k();
    }
    let budget = 1 + (seed as usize % 7);
    Instance {
        seed,
        graph,
        partition,
        target,
        budget,
    }
}

pub fn as_triples(updates: impl Iterator<Item = commhide::EdgeUpdate>) -> Vec<(bool, usize, usize)> {
    updates
        .map(|e| (e.action == commhide::EditAction::Add, e.u, e.v))
        .collect()
}

pub fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// Newman's ordered-pair sum `(1/2m) sum_ij (A_ij - k_i k_j / 2m) [c_i = c_j]`.
pub fn modularity_by_pairs(d: &Dense, c: &[usize]) -> BigRational {
    let m2 = 2 * d.edge_count() as i64;
    let mut q = BigRational::zero();
    for i in 0..d.n {
        for j in 0..d.n {
            if c[i] != c[j] {
                continue;
            }
            let a = i64::from(d.adj[i][j]);
            q += r(a, 1) - r(d.degree(i) as i64 * d.degree(j) as i64, m2);
        }
    }
    q / r(m2, 1)
}

pub fn coverage_by_pairs(d: &Dense, c: &[usize]) -> BigRational {
    let mut intra = 0;
    for i in 0..d.n {
        for j in i + 1..d.n {
            if d.adj[i][j] && c[i] == c[j] {
                intra += 1;
            }
        }
    }
    r(intra, d.edge_count() as i64)
}

pub fn quality_by_pairs(d: &Dense, c: &[usize]) -> BigRational {
    let mut right = 0;
    let mut pairs = 0;
    for i in 0..d.n {
        for j in i + 1..d.n {
            pairs += 1;
            if d.adj[i][j] == (c[i] == c[j]) {
                right += 1;
            }
        }
    }
    r(right, pairs)
}

/// Every set partition of `0..n`, as restricted-growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            cur.push(c);
            go(i + 1, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}
