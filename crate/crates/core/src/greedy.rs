//! Budgeted greedy edge editing shared by deception and recovery.
//!
//! Each iteration proposes two edits, one per candidate family. Within a
//! family the candidate is picked by the permanence change of its scored
//! endpoint alone; the choice between the two families uses the change in
//! graph permanence. The loop stops early once neither edit improves the
//! objective.

use serde::{Deserialize, Serialize};

use crate::community::CommunityStructure;
use crate::error::{Error, Result};
use crate::graph::{EdgeUpdate, EditAction, Graph, NodeId};
use crate::permanence::{
    graph_permanence, permanence_after_unchecked, permanence_unchecked, PermanenceCache,
};

/// How graph-level permanence deltas are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Scoring {
    /// Rescore only the vertices an edit can affect.
    #[default]
    Incremental,
    /// Rebuild every vertex score for every evaluation. Slow; for checking.
    FullRecompute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Objective {
    /// Deception: maximize `Perm(G) - Perm(G')`.
    Loss,
    /// Recovery: maximize `Perm(G'') - Perm(G')`.
    Gain,
}

impl Objective {
    fn improvement(self, before: f64, after: f64) -> f64 {
        match self {
            Objective::Loss => before - after,
            Objective::Gain => after - before,
        }
    }
}

/// An edit proposal. `update.u` is the endpoint whose score ranked it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub update: EdgeUpdate,
    pub vertex_delta: f64,
}

/// One applied edit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EditRecord {
    /// 1-based iteration.
    pub iteration: usize,
    pub update: EdgeUpdate,
    /// Improvement of the scored endpoint's permanence.
    pub vertex_delta: f64,
    /// Improvement of graph permanence: the loss for deception, the gain for
    /// recovery.
    pub graph_delta: f64,
    pub permanence_before: f64,
    pub permanence_after: f64,
}

/// Serialized edit-log line. Deception logs carry `p_loss`, recovery logs
/// `p_gain`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EditLogEntry {
    pub iter: usize,
    pub action: EditAction,
    pub u: String,
    pub v: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_loss: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_gain: Option<f64>,
}

pub(crate) fn log_entries(g: &Graph, records: &[EditRecord], objective: Objective) -> Vec<EditLogEntry> {
    records
        .iter()
        .map(|r| EditLogEntry {
            iter: r.iteration,
            action: r.update.action,
            u: g.label(r.update.u).to_owned(),
            v: g.label(r.update.v).to_owned(),
            p_loss: (objective == Objective::Loss).then_some(r.graph_delta),
            p_gain: (objective == Objective::Gain).then_some(r.graph_delta),
        })
        .collect()
}

/// Resolves a serialized log against `g`'s labels.
pub fn parse_edit_log(g: &Graph, json: &str) -> Result<Vec<EdgeUpdate>> {
    let entries: Vec<EditLogEntry> = serde_json::from_str(json)?;
    entries
        .iter()
        .map(|e| {
            Ok(EdgeUpdate {
                action: e.action,
                u: g.id_of(&e.u)?,
                v: g.id_of(&e.v)?,
            })
        })
        .collect()
}

/// Applies `updates` in order to a copy of `g`.
pub fn replay(g: &Graph, updates: impl IntoIterator<Item = EdgeUpdate>) -> Result<Graph> {
    let mut out = g.clone();
    for e in updates {
        out.apply(&e)?;
    }
    Ok(out)
}

/// Scores closer than this are ties; rounding can split exact ties by an ulp.
pub(crate) const SCORE_TOLERANCE: f64 = 1e-12;

/// Picks the candidate with the largest score. Equal scores go to the
/// lexicographically smallest `(label(u), label(v))`.
pub(crate) fn select_best(g: &Graph, scored: impl IntoIterator<Item = Candidate>) -> Option<Candidate> {
    let mut best: Option<Candidate> = None;
    for c in scored {
        best = match best {
            None => Some(c),
            Some(b) if c.vertex_delta > b.vertex_delta + SCORE_TOLERANCE => Some(c),
            Some(b)
                if (c.vertex_delta - b.vertex_delta).abs() <= SCORE_TOLERANCE
                    && (g.label(c.update.u), g.label(c.update.v))
                        < (g.label(b.update.u), g.label(b.update.v)) =>
            {
                Some(c)
            }
            keep => keep,
        };
    }
    best
}

/// Scores `updates` by the change in `Perm(update.u)` under `objective`.
pub(crate) fn score_candidates(
    g: &Graph,
    cs: &CommunityStructure,
    updates: Vec<EdgeUpdate>,
    objective: Objective,
) -> Option<Candidate> {
    let scored = updates.into_iter().map(|update| {
        let before = permanence_unchecked(g, cs, update.u);
        let after = permanence_after_unchecked(g, cs, update.u, &update);
        Candidate {
            update,
            vertex_delta: objective.improvement(before, after),
        }
    });
    select_best(g, scored)
}

/// Community receiving the most edges from `u` outside `u`'s own, smallest
/// index on ties. `None` when `u` has no inter-community edge.
pub fn external_pull_community(g: &Graph, cs: &CommunityStructure, u: NodeId) -> Option<usize> {
    let own = cs.community_of(u);
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &w in g.adj(u) {
        let c = cs.community_of(w);
        if c == own {
            continue;
        }
        match counts.iter_mut().find(|(cc, _)| *cc == c) {
            Some(slot) => slot.1 += 1,
            None => counts.push((c, 1)),
        }
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(c, _)| c)
}

/// Pairs `(u, v)` with `u` in community `target` and `v` in `u`'s external
/// pull community, filtered by whether the edge currently exists.
pub(crate) fn pull_pairs(g: &Graph, cs: &CommunityStructure, target: usize, existing: bool) -> Vec<EdgeUpdate> {
    let mut out = Vec::new();
    for &u in cs.members(target) {
        let Some(pull) = external_pull_community(g, cs, u) else {
            continue;
        };
        for &v in cs.members(pull) {
            match (existing, g.adjacent(u, v)) {
                (true, true) => out.push(EdgeUpdate::delete(u, v)),
                (false, false) => out.push(EdgeUpdate::add(u, v)),
                _ => {}
            }
        }
    }
    out
}

/// Unordered pairs inside community `target`, oriented so the smaller label
/// comes first, filtered by whether the edge currently exists.
pub(crate) fn inner_pairs(g: &Graph, cs: &CommunityStructure, target: usize, existing: bool) -> Vec<EdgeUpdate> {
    let members = cs.members(target);
    let mut out = Vec::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            if g.adjacent(a, b) != existing {
                continue;
            }
            let (w, z) = if g.label(a) <= g.label(b) { (a, b) } else { (b, a) };
            out.push(if existing {
                EdgeUpdate::delete(w, z)
            } else {
                EdgeUpdate::add(w, z)
            });
        }
    }
    out
}

pub(crate) struct GreedyOutcome {
    pub graph: Graph,
    pub records: Vec<EditRecord>,
    pub initial_permanence: f64,
    pub final_permanence: f64,
}

type Proposer = fn(&Graph, &CommunityStructure, usize) -> Option<Candidate>;

/// Runs up to `budget` iterations. `first` wins ties against `second`.
pub(crate) fn run_greedy(
    g: &Graph,
    cs: &CommunityStructure,
    target: usize,
    budget: usize,
    scoring: Scoring,
    objective: Objective,
    first: Proposer,
    second: Proposer,
) -> Result<GreedyOutcome> {
    cs.check_graph(g)?;
    cs.check_index(target)?;
    if budget == 0 {
        return Err(Error::Config("budget must be at least 1".into()));
    }
    let mut graph = g.clone();
    let mut cache = PermanenceCache::build(&graph, cs)?;
    let initial_permanence = cache.graph_permanence();
    let mut records = Vec::new();

    for iteration in 1..=budget {
        let before = cache.graph_permanence();
        let evaluate = |c: Option<Candidate>| -> Result<Option<(Candidate, f64, f64)>> {
            let Some(c) = c else { return Ok(None) };
            let after = match scoring {
                Scoring::Incremental => cache.graph_permanence_after(&graph, cs, &c.update)?,
                Scoring::FullRecompute => graph_permanence(&graph.with_update(&c.update)?, cs)?,
            };
            Ok(Some((c, objective.improvement(before, after), after)))
        };
        let a = evaluate(first(&graph, cs, target))?;
        let b = evaluate(second(&graph, cs, target))?;
        let b_gain = b.map_or(f64::NEG_INFINITY, |(_, d, _)| d);
        let chosen = match (a, b) {
            (Some(a), _) if a.1 > SCORE_TOLERANCE && a.1 >= b_gain - SCORE_TOLERANCE => a,
            (_, Some(b)) if b.1 > SCORE_TOLERANCE => b,
            _ => break,
        };
        let (cand, delta, predicted_after) = chosen;
        match scoring {
            Scoring::Incremental => cache.apply(&mut graph, cs, &cand.update)?,
            Scoring::FullRecompute => {
                graph.apply(&cand.update)?;
                cache = PermanenceCache::build(&graph, cs)?;
            }
        }
        debug_assert_eq!(cache.graph_permanence(), predicted_after);
        records.push(EditRecord {
            iteration,
            update: cand.update,
            vertex_delta: cand.vertex_delta,
            graph_delta: delta,
            permanence_before: before,
            permanence_after: cache.graph_permanence(),
        });
    }

    Ok(GreedyOutcome {
        final_permanence: cache.graph_permanence(),
        graph,
        records,
        initial_permanence,
    })
}
