//! NEURAL: hide a target community by greedy permanence loss.
//!
//! Two edit families compete each iteration: adding an edge from a target
//! member to its strongest external community, and deleting an edge inside
//! the target. The partition stays fixed for the whole run.

use crate::community::CommunityStructure;
use crate::error::Result;
use crate::graph::{EdgeUpdate, Graph, NodeId};
use crate::greedy::{self, inner_pairs, pull_pairs, EditLogEntry, EditRecord, Objective, Scoring};

pub use crate::greedy::{external_pull_community, Candidate};

/// Inter-community additions NEURAL may consider for `target`.
pub fn add_candidates(g: &Graph, cs: &CommunityStructure, target: usize) -> Vec<EdgeUpdate> {
    pull_pairs(g, cs, target, false)
}

/// Intra-community deletions NEURAL may consider for `target`.
pub fn delete_candidates(g: &Graph, cs: &CommunityStructure, target: usize) -> Vec<EdgeUpdate> {
    inner_pairs(g, cs, target, true)
}

/// The addition maximizing `Perm(u, G) - Perm(u, G + uv)`.
pub fn best_add_candidate(g: &Graph, cs: &CommunityStructure, target: usize) -> Option<Candidate> {
    greedy::score_candidates(g, cs, add_candidates(g, cs, target), Objective::Loss)
}

/// The deletion maximizing `Perm(w, G) - Perm(w, G - wz)`, where `w` is the
/// endpoint with the smaller label.
pub fn best_delete_candidate(g: &Graph, cs: &CommunityStructure, target: usize) -> Option<Candidate> {
    greedy::score_candidates(g, cs, delete_candidates(g, cs, target), Objective::Loss)
}

#[derive(Clone, Debug)]
pub struct DeceptionRun {
    pub target: usize,
    pub target_nodes: Vec<NodeId>,
    pub budget: usize,
    pub log: Vec<EditRecord>,
    pub graph: Graph,
    pub initial_permanence: f64,
    pub final_permanence: f64,
}

impl DeceptionRun {
    pub fn updates(&self) -> impl Iterator<Item = EdgeUpdate> + '_ {
        self.log.iter().map(|r| r.update)
    }

    pub fn log_entries(&self) -> Vec<EditLogEntry> {
        greedy::log_entries(&self.graph, &self.log, Objective::Loss)
    }

    pub fn log_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.log_entries())?)
    }
}

pub fn neural(g: &Graph, cs: &CommunityStructure, target: usize, budget: usize) -> Result<DeceptionRun> {
    neural_with(g, cs, target, budget, Scoring::Incremental)
}

pub fn neural_with(
    g: &Graph,
    cs: &CommunityStructure,
    target: usize,
    budget: usize,
    scoring: Scoring,
) -> Result<DeceptionRun> {
    let out = greedy::run_greedy(
        g,
        cs,
        target,
        budget,
        scoring,
        Objective::Loss,
        best_add_candidate,
        best_delete_candidate,
    )?;
    Ok(DeceptionRun {
        target,
        target_nodes: cs.members(target).to_vec(),
        budget,
        log: out.records,
        graph: out.graph,
        initial_permanence: out.initial_permanence,
        final_permanence: out.final_permanence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EditAction;
    use crate::permanence::graph_permanence;

    fn bridged_triangles() -> (Graph, CommunityStructure) {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
        (g, CommunityStructure::from_assignment(&[0, 0, 0, 1, 1, 1]))
    }

    #[test]
    fn external_pull() {
        let (g, cs) = bridged_triangles();
        assert_eq!(external_pull_community(&g, &cs, 2), Some(1));
        assert_eq!(external_pull_community(&g, &cs, 0), None);

        // node 0 has two edges into community 1 and two into community 2
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let cs = CommunityStructure::from_assignment(&[0, 1, 1, 2, 2]);
        assert_eq!(external_pull_community(&g, &cs, 0), Some(1));
        let cs = CommunityStructure::from_communities(5, vec![vec![0], vec![3, 4], vec![1, 2]]).unwrap();
        assert_eq!(external_pull_community(&g, &cs, 0), Some(1));
    }

    #[test]
    fn candidate_sets_on_bridged_triangles() {
        let (g, cs) = bridged_triangles();
        let mut adds: Vec<_> = add_candidates(&g, &cs, 0).iter().map(|e| (e.u, e.v)).collect();
        adds.sort_unstable();
        assert_eq!(adds, vec![(2, 4), (2, 5)]);
        let mut dels: Vec<_> = delete_candidates(&g, &cs, 0).iter().map(|e| (e.u, e.v)).collect();
        dels.sort_unstable();
        assert_eq!(dels, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn no_candidates() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let cs = CommunityStructure::from_assignment(&[0, 0, 1, 1]);
        assert!(best_add_candidate(&g, &cs, 0).is_none());
        let cs = CommunityStructure::from_assignment(&[0, 1, 2, 2]);
        assert!(best_delete_candidate(&g, &cs, 0).is_none());
    }

    #[test]
    fn single_step_lowers_permanence() {
        let (g, cs) = bridged_triangles();
        let run = neural(&g, &cs, 0, 1).unwrap();
        assert_eq!(run.log.len(), 1);
        let before = graph_permanence(&g, &cs).unwrap();
        let after = graph_permanence(&run.graph, &cs).unwrap();
        assert!(after < before);
        assert_eq!(run.log[0].permanence_after, after);
    }

    #[test]
    fn three_steps_are_monotone() {
        let (g, cs) = bridged_triangles();
        let run = neural(&g, &cs, 0, 3).unwrap();
        assert!(run.log.len() <= 3);
        let mut current = g.clone();
        let mut last = graph_permanence(&g, &cs).unwrap();
        for r in &run.log {
            current.apply(&r.update).unwrap();
            let p = graph_permanence(&current, &cs).unwrap();
            assert!(p < last);
            assert!((r.graph_delta - (last - p)).abs() < 1e-9);
            match r.update.action {
                EditAction::Add => assert!(!cs.is_intra(r.update.u, r.update.v)),
                EditAction::Delete => {
                    assert_eq!(cs.community_of(r.update.u), 0);
                    assert_eq!(cs.community_of(r.update.v), 0);
                }
            }
            last = p;
        }
        assert_eq!(current, run.graph);
    }

    #[test]
    fn stops_when_nothing_helps() {
        // Two isolated nodes in separate communities: no internal edges to delete,
        // no external pull to add along.
        let g = Graph::with_nodes(2);
        let cs = CommunityStructure::singletons(2);
        let run = neural(&g, &cs, 0, 5).unwrap();
        assert!(run.log.is_empty());
        assert_eq!(run.graph, g);
    }

    #[test]
    fn rejects_bad_inputs() {
        let (g, cs) = bridged_triangles();
        assert!(neural(&g, &cs, 2, 1).is_err());
        assert!(neural(&g, &cs, 0, 0).is_err());
    }

    #[test]
    fn full_recompute_agrees() {
        let (g, cs) = bridged_triangles();
        let fast = neural(&g, &cs, 1, 4).unwrap();
        let slow = neural_with(&g, &cs, 1, 4, Scoring::FullRecompute).unwrap();
        assert_eq!(fast.log, slow.log);
    }
}
