//! Partition quality metrics and spectral graph distance.

mod spectral;

use serde::{Deserialize, Serialize};

pub use spectral::{laplacian_spectrum, spectral_distance, symmetric_eigenvalues, SpectralDistance, DEFAULT_ENERGY};

use crate::community::CommunityStructure;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which of the three pipeline graphs a row describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphTag {
    #[serde(rename = "G")]
    Original,
    #[serde(rename = "G'")]
    Deceived,
    #[serde(rename = "G''")]
    Recovered,
}

impl GraphTag {
    pub const ALL: [GraphTag; 3] = [GraphTag::Original, GraphTag::Deceived, GraphTag::Recovered];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphTag::Original => "G",
            GraphTag::Deceived => "G'",
            GraphTag::Recovered => "G''",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub graph: GraphTag,
    pub modularity: f64,
    pub coverage: f64,
    pub partition_quality: f64,
    pub communities: usize,
}

impl MetricsRow {
    pub fn evaluate(tag: GraphTag, g: &Graph, cs: &CommunityStructure) -> Result<Self> {
        let counts = PartitionCounts::new(g, cs)?;
        Ok(Self {
            graph: tag,
            modularity: counts.modularity()?,
            coverage: counts.coverage()?,
            partition_quality: counts.partition_quality()?,
            communities: cs.k(),
        })
    }
}

/// Edge and degree tallies per community, shared by all three metrics.
#[derive(Clone, Debug)]
pub struct PartitionCounts {
    pub nodes: usize,
    pub edges: usize,
    /// Edges with both endpoints in community `c`.
    pub intra: Vec<usize>,
    /// Sum of degrees of community `c`'s members.
    pub degree_sum: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl PartitionCounts {
    pub fn new(g: &Graph, cs: &CommunityStructure) -> Result<Self> {
        cs.check_graph(g)?;
        let k = cs.k();
        let mut intra = vec![0; k];
        let mut degree_sum = vec![0; k];
        for v in g.nodes() {
            degree_sum[cs.community_of(v)] += g.adj(v).len();
        }
        for (u, v) in g.edges() {
            if cs.is_intra(u, v) {
                intra[cs.community_of(u)] += 1;
            }
        }
        Ok(Self {
            nodes: g.node_count(),
            edges: g.edge_count(),
            intra,
            degree_sum,
            sizes: cs.communities().iter().map(Vec::len).collect(),
        })
    }

    pub fn intra_total(&self) -> usize {
        self.intra.iter().sum()
    }

    pub fn modularity(&self) -> Result<f64> {
        if self.edges == 0 {
            return Err(Error::NoEdges);
        }
        let m = self.edges as f64;
        Ok(self
            .intra
            .iter()
            .zip(&self.degree_sum)
            .map(|(&e, &d)| {
                let share = d as f64 / (2.0 * m);
                e as f64 / m - share * share
            })
            .sum())
    }

    pub fn coverage(&self) -> Result<f64> {
        if self.edges == 0 {
            return Err(Error::NoEdges);
        }
        Ok(self.intra_total() as f64 / self.edges as f64)
    }

    /// Fraction of node pairs that are either linked inside a community or
    /// unlinked across communities.
    pub fn partition_quality(&self) -> Result<f64> {
        if self.nodes < 2 {
            return Err(Error::TooFewNodes);
        }
        let pairs = self.nodes * (self.nodes - 1) / 2;
        let intra_pairs: usize = self.sizes.iter().map(|&s| s * s.saturating_sub(1) / 2).sum();
        let intra_edges = self.intra_total();
        let inter_edges = self.edges - intra_edges;
        let inter_non_edges = (pairs - intra_pairs) - inter_edges;
        Ok((intra_edges + inter_non_edges) as f64 / pairs as f64)
    }
}

pub fn modularity(g: &Graph, cs: &CommunityStructure) -> Result<f64> {
    PartitionCounts::new(g, cs)?.modularity()
}

pub fn coverage(g: &Graph, cs: &CommunityStructure) -> Result<f64> {
    PartitionCounts::new(g, cs)?.coverage()
}

pub fn partition_quality(g: &Graph, cs: &CommunityStructure) -> Result<f64> {
    PartitionCounts::new(g, cs)?.partition_quality()
}
