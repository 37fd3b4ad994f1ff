//! R-NEURAL: restore a hidden community by greedy permanence gain.
//!
//! The mirror image of [`crate::deception`]: target members lose edges to
//! their strongest external community and gain edges inside the target.
//! Nothing is known about which edits deception made, so edges that were in
//! the original graph may be removed too.

use crate::community::CommunityStructure;
use crate::error::Result;
use crate::graph::{EdgeUpdate, Graph, NodeId};
use crate::greedy::{self, inner_pairs, pull_pairs, Candidate, EditLogEntry, EditRecord, Objective, Scoring};

/// Inter-community deletions R-NEURAL may consider for `target`.
pub fn delete_candidates(g: &Graph, cs: &CommunityStructure, target: usize) -> Vec<EdgeUpdate> {
    pull_pairs(g, cs, target, true)
}

/// Intra-community additions R-NEURAL may consider for `target`.
pub fn add_candidates(g: &Graph, cs: &CommunityStructure, target: usize) -> Vec<EdgeUpdate> {
    inner_pairs(g, cs, target, false)
}

/// The deletion maximizing `Perm(u, G - uv) - Perm(u, G)`.
pub fn best_delete_candidate(g: &Graph, cs: &CommunityStructure, target: usize) -> Option<Candidate> {
    greedy::score_candidates(g, cs, delete_candidates(g, cs, target), Objective::Gain)
}

/// The addition maximizing `Perm(w, G + wz) - Perm(w, G)`.
pub fn best_add_candidate(g: &Graph, cs: &CommunityStructure, target: usize) -> Option<Candidate> {
    greedy::score_candidates(g, cs, add_candidates(g, cs, target), Objective::Gain)
}

#[derive(Clone, Debug)]
pub struct RecoveryRun {
    pub target: usize,
    pub target_nodes: Vec<NodeId>,
    pub budget: usize,
    pub log: Vec<EditRecord>,
    pub graph: Graph,
    pub initial_permanence: f64,
    pub final_permanence: f64,
}

impl RecoveryRun {
    pub fn updates(&self) -> impl Iterator<Item = EdgeUpdate> + '_ {
        self.log.iter().map(|r| r.update)
    }

    pub fn log_entries(&self) -> Vec<EditLogEntry> {
        greedy::log_entries(&self.graph, &self.log, Objective::Gain)
    }

    pub fn log_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.log_entries())?)
    }
}

pub fn r_neural(g_prime: &Graph, cs: &CommunityStructure, target: usize, budget: usize) -> Result<RecoveryRun> {
    r_neural_with(g_prime, cs, target, budget, Scoring::Incremental)
}

pub fn r_neural_with(
    g_prime: &Graph,
    cs: &CommunityStructure,
    target: usize,
    budget: usize,
    scoring: Scoring,
) -> Result<RecoveryRun> {
    let out = greedy::run_greedy(
        g_prime,
        cs,
        target,
        budget,
        scoring,
        Objective::Gain,
        best_delete_candidate,
        best_add_candidate,
    )?;
    Ok(RecoveryRun {
        target,
        target_nodes: cs.members(target).to_vec(),
        budget,
        log: out.records,
        graph: out.graph,
        initial_permanence: out.initial_permanence,
        final_permanence: out.final_permanence,
    })
}
