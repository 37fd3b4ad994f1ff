//! Disjoint community structures and the detectors that produce them.

mod label_propagation;
mod louvain;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use label_propagation::{label_propagation, LabelPropagation};
pub use louvain::{louvain, Louvain};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// A partition of `0..n` into `k` non-empty, pairwise disjoint communities.
///
/// Community indices are `0..k`. Member lists are sorted by node id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommunityStructure {
    assignment: Vec<usize>,
    communities: Vec<Vec<NodeId>>,
    stamp: u64,
}

impl CommunityStructure {
    /// Builds a structure from arbitrary per-node community tags. Tags are
    /// renumbered `0..k` in order of first appearance over node ids.
    pub fn from_assignment(tags: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut assignment = Vec::with_capacity(tags.len());
        let mut communities: Vec<Vec<NodeId>> = Vec::new();
        for (v, &tag) in tags.iter().enumerate() {
            let next = remap.len();
            let c = *remap.entry(tag).or_insert(next);
            if c == communities.len() {
                communities.push(Vec::new());
            }
            communities[c].push(v);
            assignment.push(c);
        }
        Self::assemble(assignment, communities)
    }

    /// Builds a structure from explicit member sets, keeping their order as
    /// the community indices.
    pub fn from_communities(n: usize, sets: Vec<Vec<NodeId>>) -> Result<Self> {
        let mut assignment = vec![usize::MAX; n];
        let mut communities = Vec::with_capacity(sets.len());
        for (c, mut members) in sets.into_iter().enumerate() {
            if members.is_empty() {
                return Err(Error::InvalidPartition(format!("community {c} is empty")));
            }
            members.sort_unstable();
            for &v in &members {
                if v >= n {
                    return Err(Error::InvalidPartition(format!("node {v} out of range")));
                }
                if assignment[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "node {v} is in communities {} and {c}",
                        assignment[v]
                    )));
                }
                assignment[v] = c;
            }
            communities.push(members);
        }
        if let Some(v) = assignment.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!("node {v} is unassigned")));
        }
        Ok(Self::assemble(assignment, communities))
    }

    pub fn singletons(n: usize) -> Self {
        Self::from_assignment(&(0..n).collect::<Vec<_>>())
    }

    pub fn whole(n: usize) -> Self {
        Self::from_assignment(&vec![0; n])
    }

    fn assemble(assignment: Vec<usize>, communities: Vec<Vec<NodeId>>) -> Self {
        let mut stamp = 0xcbf2_9ce4_8422_2325_u64;
        for &c in &assignment {
            stamp ^= c as u64;
            stamp = stamp.wrapping_mul(0x0100_0000_01b3);
        }
        Self {
            assignment,
            communities,
            stamp,
        }
    }

    pub fn k(&self) -> usize {
        self.communities.len()
    }

    pub fn node_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn community_of(&self, v: NodeId) -> usize {
        self.assignment[v]
    }

    pub fn members(&self, c: usize) -> &[NodeId] {
        &self.communities[c]
    }

    pub fn communities(&self) -> &[Vec<NodeId>] {
        &self.communities
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Fingerprint of the assignment vector.
    pub fn stamp(&self) -> u64 {
        self.stamp
    }

    pub fn check_index(&self, c: usize) -> Result<()> {
        if c < self.k() {
            Ok(())
        } else {
            Err(Error::UnknownCommunity {
                index: c,
                k: self.k(),
            })
        }
    }

    pub fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.node_count() == g.node_count() {
            Ok(())
        } else {
            Err(Error::InvalidPartition(format!(
                "partition covers {} nodes, graph has {}",
                self.node_count(),
                g.node_count()
            )))
        }
    }

    /// Index of the largest community, smallest index on ties.
    pub fn largest(&self) -> usize {
        let mut best = 0;
        for (c, members) in self.communities.iter().enumerate() {
            if members.len() > self.communities[best].len() {
                best = c;
            }
        }
        best
    }

    pub fn is_intra(&self, u: NodeId, v: NodeId) -> bool {
        self.assignment[u] == self.assignment[v]
    }

    pub fn labelled(&self, g: &Graph) -> Vec<Vec<String>> {
        self.communities
            .iter()
            .map(|members| members.iter().map(|&v| g.label(v).to_owned()).collect())
            .collect()
    }

    /// One line per community, space-separated labels.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = String::new();
        for members in self.labelled(g) {
            out.push_str(&members.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, g: &Graph) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.labelled(g))?)
    }

    /// Inverse of [`CommunityStructure::to_text`].
    pub fn parse_text(g: &Graph, text: &str) -> Result<Self> {
        let mut sets = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            sets.push(
                line.split_whitespace()
                    .map(|label| g.id_of(label))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Self::from_communities(g.node_count(), sets)
    }
}

/// Maps a known node set onto the community with the highest Jaccard
/// overlap. Ties go to the smallest community index.
pub fn match_community(cs: &CommunityStructure, target: &[NodeId]) -> Result<usize> {
    if target.is_empty() {
        return Err(Error::Target("empty target node set".into()));
    }
    let mut in_target = vec![false; cs.node_count()];
    for &v in target {
        if v >= cs.node_count() {
            return Err(Error::UnknownNode(v));
        }
        in_target[v] = true;
    }
    let target_size = in_target.iter().filter(|&&t| t).count();
    let mut best = (0usize, 0usize, usize::MAX); // (index, intersection, union)
    for (c, members) in cs.communities().iter().enumerate() {
        let inter = members.iter().filter(|&&v| in_target[v]).count();
        let union = members.len() + target_size - inter;
        // inter/union > best_inter/best_union, compared without division.
        if c == 0 || inter * best.2 > best.1 * union {
            best = (c, inter, union);
        }
    }
    Ok(best.0)
}

pub trait CommunityDetector {
    fn name(&self) -> &'static str;

    fn detect(&self, g: &Graph, seed: u64) -> Result<CommunityStructure>;
}

/// Registered detectors, selectable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Detector {
    Louvain,
    #[serde(rename = "labelprop")]
    LabelPropagation,
}

impl Detector {
    pub const ALL: [Detector; 2] = [Detector::Louvain, Detector::LabelPropagation];

    pub fn detector(self) -> &'static (dyn CommunityDetector + Sync) {
        match self {
            Detector::Louvain => &Louvain,
            Detector::LabelPropagation => &LabelPropagation,
        }
    }

    pub fn name(self) -> &'static str {
        self.detector().name()
    }

    pub fn detect(self, g: &Graph, seed: u64) -> Result<CommunityStructure> {
        self.detector().detect(g, seed)
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Detector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Detector::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .or(match s {
                "lpa" | "label_propagation" => Some(Detector::LabelPropagation),
                _ => None,
            })
            .ok_or_else(|| Error::UnknownDetector(s.to_owned()))
    }
}
