//! Permanence-based community deception and recovery.
//!
//! The crate covers the whole experiment loop on small undirected graphs:
//!
//! * [`graph`]: simple graphs, single-edge updates, edge-list and GML I/O.
//! * [`community`]: partitions plus Louvain and label-propagation detectors.
//! * [`permanence`]: vertex and graph permanence with incremental rescoring.
//! * [`deception`]: NEURAL, hiding a community by greedy permanence loss.
//! * [`recovery`]: R-NEURAL, undoing it by greedy permanence gain.
//! * [`metrics`]: modularity, coverage, partition quality, spectral distance.
//! * [`harness`]: detect, deceive, recover, evaluate; single runs and sweeps.

pub mod community;
pub mod deception;
pub mod error;
pub mod generate;
pub mod graph;
mod greedy;
pub mod harness;
pub mod metrics;
pub mod permanence;
pub mod recovery;

pub use community::{match_community, CommunityDetector, CommunityStructure, Detector};
pub use error::{Error, Result};
pub use graph::{EdgeUpdate, EditAction, Graph, GraphFormat, NodeId};
pub use greedy::{parse_edit_log, replay, Candidate, EditLogEntry, EditRecord, Scoring};
