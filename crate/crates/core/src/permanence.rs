//! Vertex and graph permanence, with incremental rescoring after single-edge
//! toggles.
//!
//! For a vertex `v` with degree `d`, internal degree `I` (neighbors in its
//! own community), maximum external pull `E` (largest number of neighbors
//! in any one other community) and internal clustering `c` (edge density
//! among the internal neighbors):
//!
//! ```text
//! perm(v) = I / (max(E, 1) * d) - (1 - c)
//! ```
//!
//! `c` is 0 when `I < 2`, and an isolated vertex scores 0. Graph permanence
//! is the mean over all vertices.
//!
//! Toggling edge `(u, v)` can only change the scores of `u`, `v` and their
//! common neighbors, so [`PermanenceCache`] rescores just that set.

use serde::Serialize;

use crate::community::CommunityStructure;
use crate::error::{Error, Result};
use crate::graph::{EdgeUpdate, EditAction, Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VertexPermanenceParts {
    pub internal: usize,
    pub max_external: usize,
    pub degree: usize,
    pub internal_clustering: f64,
    pub permanence: f64,
}

/// Read-only adjacency, either a graph or a graph with one edge toggled.
trait View {
    fn for_each_neighbor(&self, v: NodeId, f: impl FnMut(NodeId));

    fn adjacent(&self, a: NodeId, b: NodeId) -> bool;
}

impl View for Graph {
    fn for_each_neighbor(&self, v: NodeId, f: impl FnMut(NodeId)) {
        self.adj(v).iter().copied().for_each(f);
    }

    fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        Graph::adjacent(self, a, b)
    }
}

/// `g` as it would look after a valid `update`.
struct Toggled<'a> {
    g: &'a Graph,
    u: NodeId,
    v: NodeId,
    add: bool,
}

impl<'a> Toggled<'a> {
    fn new(g: &'a Graph, update: &EdgeUpdate) -> Self {
        Self {
            g,
            u: update.u,
            v: update.v,
            add: update.action == EditAction::Add,
        }
    }

    fn is_pair(&self, a: NodeId, b: NodeId) -> bool {
        (a == self.u && b == self.v) || (a == self.v && b == self.u)
    }
}

impl View for Toggled<'_> {
    fn for_each_neighbor(&self, x: NodeId, mut f: impl FnMut(NodeId)) {
        let other = if x == self.u {
            Some(self.v)
        } else if x == self.v {
            Some(self.u)
        } else {
            None
        };
        match other {
            None => self.g.adj(x).iter().copied().for_each(f),
            Some(o) if self.add => {
                self.g.adj(x).iter().copied().for_each(&mut f);
                f(o);
            }
            Some(o) => self.g.adj(x).iter().copied().filter(|&w| w != o).for_each(f),
        }
    }

    fn adjacent(&self, a: NodeId, b: NodeId) -> bool {
        if self.is_pair(a, b) {
            self.add
        } else {
            self.g.adjacent(a, b)
        }
    }
}

fn parts_on(view: &impl View, cs: &CommunityStructure, v: NodeId) -> VertexPermanenceParts {
    let own = cs.community_of(v);
    let mut internal: Vec<NodeId> = Vec::new();
    // (community, count) pairs; neighborhoods are small enough for a scan
    let mut external: Vec<(usize, usize)> = Vec::new();
    let mut degree = 0;
    view.for_each_neighbor(v, |w| {
        degree += 1;
        let c = cs.community_of(w);
        if c == own {
            internal.push(w);
        } else if let Some(slot) = external.iter_mut().find(|(ec, _)| *ec == c) {
            slot.1 += 1;
        } else {
            external.push((c, 1));
        }
    });
    let max_external = external.iter().map(|&(_, n)| n).max().unwrap_or(0);
    if degree == 0 {
        return VertexPermanenceParts {
            internal: 0,
            max_external: 0,
            degree: 0,
            internal_clustering: 0.0,
            permanence: 0.0,
        };
    }
    let i = internal.len();
    let internal_clustering = if i >= 2 {
        let mut links = 0usize;
        for (a_idx, &a) in internal.iter().enumerate() {
            for &b in &internal[a_idx + 1..] {
                if view.adjacent(a, b) {
                    links += 1;
                }
            }
        }
        links as f64 / (i * (i - 1) / 2) as f64
    } else {
        0.0
    };
    let pull = i as f64 / (max_external.max(1) * degree) as f64;
    VertexPermanenceParts {
        internal: i,
        max_external,
        degree,
        internal_clustering,
        permanence: pull - (1.0 - internal_clustering),
    }
}

fn check_inputs(g: &Graph, cs: &CommunityStructure, v: NodeId) -> Result<()> {
    cs.check_graph(g)?;
    if v >= g.node_count() {
        return Err(Error::UnknownNode(v));
    }
    Ok(())
}

pub fn vertex_permanence(g: &Graph, cs: &CommunityStructure, v: NodeId) -> Result<VertexPermanenceParts> {
    check_inputs(g, cs, v)?;
    Ok(parts_on(g, cs, v))
}

/// Permanence of `v` in the graph obtained by applying `update` to `g`.
/// `g` itself is not modified.
pub fn vertex_permanence_after(
    g: &Graph,
    cs: &CommunityStructure,
    v: NodeId,
    update: &EdgeUpdate,
) -> Result<VertexPermanenceParts> {
    check_inputs(g, cs, v)?;
    update.validate(g)?;
    Ok(parts_on(&Toggled::new(g, update), cs, v))
}

pub(crate) fn permanence_unchecked(g: &Graph, cs: &CommunityStructure, v: NodeId) -> f64 {
    parts_on(g, cs, v).permanence
}

pub(crate) fn permanence_after_unchecked(
    g: &Graph,
    cs: &CommunityStructure,
    v: NodeId,
    update: &EdgeUpdate,
) -> f64 {
    parts_on(&Toggled::new(g, update), cs, v).permanence
}

pub fn graph_permanence(g: &Graph, cs: &CommunityStructure) -> Result<f64> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    cs.check_graph(g)?;
    let sum: f64 = g.nodes().map(|v| parts_on(g, cs, v).permanence).sum();
    Ok(sum / g.node_count() as f64)
}

/// `label,I,Emax,deg,Cin,perm` per vertex, then a `#graph` row holding the
/// mean in the last column.
pub fn permanence_csv(g: &Graph, cs: &CommunityStructure) -> Result<String> {
    use std::fmt::Write;
    let mean = graph_permanence(g, cs)?;
    let mut out = String::from("label,I,Emax,deg,Cin,perm\n");
    for v in g.nodes() {
        let p = parts_on(g, cs, v);
        writeln!(
            out,
            "{},{},{},{},{},{}",
            g.label(v),
            p.internal,
            p.max_external,
            p.degree,
            p.internal_clustering,
            p.permanence
        )
        .unwrap();
    }
    writeln!(out, "#graph,,,,,{mean}").unwrap();
    Ok(out)
}

/// Vertices whose permanence can change when `(u, v)` is toggled: the
/// endpoints and their common neighbors. Sorted by id.
pub fn affected_set(g: &Graph, u: NodeId, v: NodeId) -> Vec<NodeId> {
    let mut out = g.common_neighbors(u, v);
    out.push(u);
    out.push(v);
    out.sort_unstable();
    out.dedup();
    out
}

/// Per-vertex permanence for one `(graph, partition)` pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PermanenceCache {
    parts: Vec<VertexPermanenceParts>,
    graph_permanence: f64,
    graph_stamp: u64,
    partition_stamp: u64,
}

impl PermanenceCache {
    pub fn build(g: &Graph, cs: &CommunityStructure) -> Result<Self> {
        if g.is_empty() {
            return Err(Error::EmptyGraph);
        }
        cs.check_graph(g)?;
        let parts: Vec<_> = g.nodes().map(|v| parts_on(g, cs, v)).collect();
        Ok(Self {
            graph_permanence: mean(&parts),
            parts,
            graph_stamp: g.stamp(),
            partition_stamp: cs.stamp(),
        })
    }

    pub fn parts(&self) -> &[VertexPermanenceParts] {
        &self.parts
    }

    pub fn permanence(&self, v: NodeId) -> f64 {
        self.parts[v].permanence
    }

    pub fn graph_permanence(&self) -> f64 {
        self.graph_permanence
    }

    pub fn is_valid_for(&self, g: &Graph, cs: &CommunityStructure) -> bool {
        self.graph_stamp == g.stamp()
            && self.partition_stamp == cs.stamp()
            && self.parts.len() == g.node_count()
    }

    fn ensure_valid(&self, g: &Graph, cs: &CommunityStructure) -> Result<()> {
        if self.is_valid_for(g, cs) {
            Ok(())
        } else {
            Err(Error::StaleCache)
        }
    }

    /// Cache for `g_before` with `update` applied, computed by rescoring only
    /// the affected vertices.
    pub fn rescore_after_update(
        &self,
        g_before: &Graph,
        cs: &CommunityStructure,
        update: &EdgeUpdate,
    ) -> Result<Self> {
        self.ensure_valid(g_before, cs)?;
        update.validate(g_before)?;
        let view = Toggled::new(g_before, update);
        let mut parts = self.parts.clone();
        for w in affected_set(g_before, update.u, update.v) {
            parts[w] = parts_on(&view, cs, w);
        }
        Ok(Self {
            graph_permanence: mean(&parts),
            parts,
            graph_stamp: g_before.stamp_after(update),
            partition_stamp: self.partition_stamp,
        })
    }

    /// Graph permanence after `update`, without materializing anything.
    pub fn graph_permanence_after(
        &self,
        g: &Graph,
        cs: &CommunityStructure,
        update: &EdgeUpdate,
    ) -> Result<f64> {
        self.ensure_valid(g, cs)?;
        update.validate(g)?;
        let view = Toggled::new(g, update);
        let affected = affected_set(g, update.u, update.v);
        let mut next = affected.iter().peekable();
        let mut sum = 0.0;
        for (v, p) in self.parts.iter().enumerate() {
            if next.peek() == Some(&&v) {
                next.next();
                sum += parts_on(&view, cs, v).permanence;
            } else {
                sum += p.permanence;
            }
        }
        Ok(sum / self.parts.len() as f64)
    }

    /// Applies `update` to `g` and rescores in place.
    pub fn apply(&mut self, g: &mut Graph, cs: &CommunityStructure, update: &EdgeUpdate) -> Result<()> {
        self.ensure_valid(g, cs)?;
        g.apply(update)?;
        for w in affected_set(g, update.u, update.v) {
            self.parts[w] = parts_on(g, cs, w);
        }
        self.graph_permanence = mean(&self.parts);
        self.graph_stamp = g.stamp();
        Ok(())
    }
}

// Plain left-to-right sum, so incremental and full builds agree bit for bit.
fn mean(parts: &[VertexPermanenceParts]) -> f64 {
    let sum: f64 = parts.iter().map(|p| p.permanence).sum();
    sum / parts.len() as f64
}
