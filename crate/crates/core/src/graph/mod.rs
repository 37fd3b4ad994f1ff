//! Undirected simple graphs with dense node ids and stable external labels.
//!
//! Node ids are `0..n`. Each node keeps the label it was loaded with so that
//! reports and serialized graphs use the dataset's own names. Adjacency is a
//! sorted neighbor vector per node, which gives deterministic iteration
//! order and `O(log d)` membership tests.

mod io;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

pub use io::{
    parse_edge_list, parse_gml, read_graph, serialize_edge_list, serialize_gml, write_graph,
    GraphFormat,
};

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Clone, Debug, Default)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
    stamp: u64,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Creates an edgeless graph whose node `i` is labelled `i`.
    pub fn with_nodes(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.intern(&i.to_string());
        }
        g
    }

    /// Builds a graph on nodes `0..n` (labelled by their ids) from an edge
    /// list. Duplicates are collapsed; self-loops are rejected.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut g = Self::with_nodes(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Returns the id for `label`, adding a new isolated node if needed.
    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        self.adjacency.push(Vec::new());
        self.stamp ^= node_key(id);
        id
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.labels.len()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn id_of(&self, label: &str) -> Result<NodeId> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
    }

    fn check(&self, v: NodeId) -> Result<()> {
        if v < self.labels.len() {
            Ok(())
        } else {
            Err(Error::UnknownNode(v))
        }
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check(v)?;
        Ok(self.adjacency[v].len())
    }

    pub fn neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        self.check(v)?;
        Ok(&self.adjacency[v])
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.adjacent(u, v))
    }

    /// Sorted neighbor slice. Panics on an out-of-range id.
    #[inline]
    pub fn adj(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    /// Unchecked adjacency test. Panics on an out-of-range id.
    #[inline]
    pub fn adjacent(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.adjacency[u].len() <= self.adjacency[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Iterates every edge once as `(u, v)` with `u < v`, in id order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn common_neighbors(&self, u: NodeId, v: NodeId) -> Vec<NodeId> {
        let (a, b) = (&self.adjacency[u], &self.adjacency[v]);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Inserts `(u, v)` if absent. Returns whether the edge was new.
    pub fn insert_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::SelfLoopUpdate(u));
        }
        let pos = match self.adjacency[u].binary_search(&v) {
            Ok(_) => return Ok(false),
            Err(pos) => pos,
        };
        self.adjacency[u].insert(pos, v);
        let pos = self.adjacency[v].binary_search(&u).unwrap_err();
        self.adjacency[v].insert(pos, u);
        self.edge_count += 1;
        self.stamp ^= edge_key(u, v);
        Ok(true)
    }

    /// Removes `(u, v)` if present. Returns whether an edge was removed.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        let pos = match self.adjacency[u].binary_search(&v) {
            Ok(pos) => pos,
            Err(_) => return Ok(false),
        };
        self.adjacency[u].remove(pos);
        let pos = self.adjacency[v].binary_search(&u).unwrap();
        self.adjacency[v].remove(pos);
        self.edge_count -= 1;
        self.stamp ^= edge_key(u, v);
        Ok(true)
    }

    /// Applies `update` in place, enforcing its preconditions.
    pub fn apply(&mut self, update: &EdgeUpdate) -> Result<()> {
        update.validate(self)?;
        match update.action {
            EditAction::Add => self.insert_edge(update.u, update.v)?,
            EditAction::Delete => self.remove_edge(update.u, update.v)?,
        };
        Ok(())
    }

    /// Value-semantics form of [`Graph::apply`]: `self` is left untouched.
    pub fn with_update(&self, update: &EdgeUpdate) -> Result<Graph> {
        let mut g = self.clone();
        g.apply(update)?;
        Ok(g)
    }

    /// Order-independent fingerprint of the node count and edge set.
    /// Maintained incrementally on every mutation.
    pub fn stamp(&self) -> u64 {
        self.stamp
    }

    /// The stamp this graph would have after applying `update`.
    pub fn stamp_after(&self, update: &EdgeUpdate) -> u64 {
        self.stamp ^ edge_key(update.u, update.v)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.node_count();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n
    }

    /// The same graph re-indexed so that node ids follow `reference`.
    /// Both graphs must have the same label set.
    pub fn aligned_to(&self, reference: &Graph) -> Result<Graph> {
        if self.node_count() != reference.node_count() {
            return Err(Error::NodeSetMismatch(format!(
                "{} nodes vs {} in the reference",
                self.node_count(),
                reference.node_count()
            )));
        }
        let mut out = Graph::new();
        for l in reference.labels() {
            out.intern(l);
        }
        for (u, v) in self.edges() {
            let a = out.id_of(self.label(u)).map_err(|_| {
                Error::NodeSetMismatch(format!("`{}` is not in the reference", self.label(u)))
            })?;
            let b = out.id_of(self.label(v)).map_err(|_| {
                Error::NodeSetMismatch(format!("`{}` is not in the reference", self.label(v)))
            })?;
            out.insert_edge(a, b)?;
        }
        Ok(out)
    }

    /// Label pair for an edge, smaller label first.
    pub fn label_pair(&self, u: NodeId, v: NodeId) -> (&str, &str) {
        let (a, b) = (self.label(u), self.label(v));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn node_key(v: NodeId) -> u64 {
    splitmix64(!(v as u64))
}

fn edge_key(u: NodeId, v: NodeId) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    splitmix64(((a as u64) << 32) ^ (b as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EditAction {
    Add,
    Delete,
}

impl EditAction {
    pub fn as_str(self) -> &'static str {
        match self {
            EditAction::Add => "add",
            EditAction::Delete => "delete",
        }
    }
}

/// A single-edge toggle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeUpdate {
    pub action: EditAction,
    pub u: NodeId,
    pub v: NodeId,
}

impl EdgeUpdate {
    pub fn add(u: NodeId, v: NodeId) -> Self {
        Self {
            action: EditAction::Add,
            u,
            v,
        }
    }

    pub fn delete(u: NodeId, v: NodeId) -> Self {
        Self {
            action: EditAction::Delete,
            u,
            v,
        }
    }

    pub fn inverse(&self) -> Self {
        let action = match self.action {
            EditAction::Add => EditAction::Delete,
            EditAction::Delete => EditAction::Add,
        };
        Self { action, ..*self }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.u == self.v {
            return Err(Error::SelfLoopUpdate(self.u));
        }
        let present = g.has_edge(self.u, self.v)?;
        match (self.action, present) {
            (EditAction::Add, true) => Err(Error::DuplicateEdge(self.u, self.v)),
            (EditAction::Delete, false) => Err(Error::MissingEdge(self.u, self.v)),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn add_closes_triangle() {
        let g = path3().with_update(&EdgeUpdate::add(0, 2)).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.adjacent(2, 0));
    }

    #[test]
    fn delete_opens_triangle() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let g = tri.with_update(&EdgeUpdate::delete(0, 2)).unwrap();
        assert_eq!(g, path3());
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn duplicate_add_and_missing_delete_fail() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(
            tri.with_update(&EdgeUpdate::add(0, 1)),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            path3().with_update(&EdgeUpdate::delete(0, 2)),
            Err(Error::MissingEdge(0, 2))
        ));
        assert!(matches!(
            path3().with_update(&EdgeUpdate::add(1, 1)),
            Err(Error::SelfLoopUpdate(1))
        ));
    }

    #[test]
    fn queries() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for v in k4.nodes() {
            assert_eq!(k4.degree(v).unwrap(), 3);
        }
        let p = path3();
        assert!(!p.has_edge(0, 2).unwrap());
        assert_eq!(p.has_edge(0, 1).unwrap(), p.has_edge(1, 0).unwrap());
        assert_eq!(p.neighbors(1).unwrap(), &[0, 2]);
        assert!(matches!(p.degree(7), Err(Error::UnknownNode(7))));
        assert!(p.has_edge(0, 9).is_err());
    }

    #[test]
    fn stamp_tracks_edge_set() {
        let mut g = path3();
        let before = g.stamp();
        g.insert_edge(0, 2).unwrap();
        assert_ne!(g.stamp(), before);
        g.remove_edge(2, 0).unwrap();
        assert_eq!(g.stamp(), before);
        let rebuilt = Graph::from_edges(3, &[(2, 1), (1, 0)]).unwrap();
        assert_eq!(rebuilt.stamp(), before);
    }

    #[test]
    fn connectivity() {
        assert!(path3().is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
    }

    #[test]
    fn common_neighbors_of_k4_edge() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.common_neighbors(0, 1), vec![2, 3]);
    }

    #[test]
    fn alignment_follows_reference_labels() {
        let reference = parse_edge_list("a b\nb c\n").unwrap();
        let shuffled = parse_edge_list("c b\nb a\na c\n").unwrap();
        let aligned = shuffled.aligned_to(&reference).unwrap();
        assert_eq!(aligned.labels(), reference.labels());
        assert_eq!(aligned.edge_count(), 3);
        assert!(aligned.adjacent(aligned.id_of("a").unwrap(), aligned.id_of("c").unwrap()));
        let other = parse_edge_list("a b\nb d\n").unwrap();
        assert!(matches!(other.aligned_to(&reference), Err(Error::NodeSetMismatch(_))));
    }
}
