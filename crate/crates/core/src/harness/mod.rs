//! Experiment orchestration: detect, deceive, recover, evaluate.
//!
//! A run loads `G`, detects communities, picks a target, hides it with
//! NEURAL to get `G'`, restores it with R-NEURAL to get `G''`, and then
//! scores each graph against communities re-detected on that same graph.

mod report;
mod sweep;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use report::{metrics_csv, text_table};
pub use sweep::{sweep, SweepFailure, SweepResult};

use crate::community::{match_community, CommunityStructure, Detector};
use crate::deception::{neural, DeceptionRun};
use crate::error::{Error, Result};
use crate::graph::{read_graph, Graph, GraphFormat, NodeId};
use crate::greedy::EditLogEntry;
use crate::metrics::{spectral_distance, GraphTag, MetricsRow, SpectralDistance, DEFAULT_ENERGY};
use crate::permanence::graph_permanence;
use crate::recovery::{r_neural, RecoveryRun};

/// Directory searched for dataset paths that do not exist as given.
pub const DATA_DIR_ENV: &str = "COMMHIDE_DATA_DIR";

pub const DEFAULT_BUDGET_FRACTION: f64 = 0.3;

/// `max(1, round_half_up(fraction * |target|))`.
pub fn compute_budget(target_size: usize, fraction: f64) -> usize {
    let raw = fraction * target_size as f64;
    // the nudge keeps products like 0.3 * 5 on the upper side of .5
    ((raw + 0.5 + 1e-9).floor() as usize).max(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(try_from = "String", into = "String")]
pub enum TargetSelector {
    /// Largest detected community; smallest index on ties.
    #[default]
    Largest,
    Index(usize),
    /// Community best matching these node labels.
    Nodes(Vec<String>),
}

impl FromStr for TargetSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "largest" {
            return Ok(TargetSelector::Largest);
        }
        if let Some(k) = s.strip_prefix("index:") {
            return k
                .parse()
                .map(TargetSelector::Index)
                .map_err(|_| Error::Target(format!("bad community index `{k}`")));
        }
        if let Some(list) = s.strip_prefix("nodes:") {
            let labels: Vec<String> = list
                .split(',')
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(str::to_owned)
                .collect();
            if labels.is_empty() {
                return Err(Error::Target("empty node list".into()));
            }
            return Ok(TargetSelector::Nodes(labels));
        }
        Err(Error::Target(format!(
            "`{s}` is not one of largest, index:K, nodes:a,b,c"
        )))
    }
}

impl TryFrom<String> for TargetSelector {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TargetSelector> for String {
    fn from(t: TargetSelector) -> Self {
        t.to_string()
    }
}

impl fmt::Display for TargetSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSelector::Largest => f.write_str("largest"),
            TargetSelector::Index(k) => write!(f, "index:{k}"),
            TargetSelector::Nodes(labels) => write!(f, "nodes:{}", labels.join(",")),
        }
    }
}

impl TargetSelector {
    pub fn resolve(&self, g: &Graph, cs: &CommunityStructure) -> Result<usize> {
        match self {
            TargetSelector::Largest => Ok(cs.largest()),
            TargetSelector::Index(k) => {
                cs.check_index(*k)?;
                Ok(*k)
            }
            TargetSelector::Nodes(labels) => {
                let ids = labels
                    .iter()
                    .map(|l| g.id_of(l))
                    .collect::<Result<Vec<NodeId>>>()?;
                match_community(cs, &ids)
            }
        }
    }
}

/// Which partition recovery works against.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecoveryMode {
    /// Reuse the partition and target detected on the original graph.
    #[default]
    Oracle,
    /// Re-detect on the deceived graph and map the target by overlap.
    Redetect,
}

impl FromStr for RecoveryMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(RecoveryMode::Oracle),
            "redetect" => Ok(RecoveryMode::Redetect),
            other => Err(Error::Config(format!("unknown recovery mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub graph: PathBuf,
    /// Inferred from the file extension when absent.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "format_serde")]
    pub format: Option<GraphFormat>,
    pub detector: Detector,
    pub seed: u64,
    #[serde(default)]
    pub target: TargetSelector,
    #[serde(default = "default_fraction")]
    pub budget_frac: f64,
    #[serde(default)]
    pub mode: RecoveryMode,
    #[serde(default = "default_energy")]
    pub energy: f64,
    /// Wall-clock timings break byte-identical reports, so they are opt-in.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub record_timings: bool,
}

fn default_fraction() -> f64 {
    DEFAULT_BUDGET_FRACTION
}

fn default_energy() -> f64 {
    DEFAULT_ENERGY
}

mod format_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::graph::GraphFormat;

    pub fn serialize<S: Serializer>(f: &Option<GraphFormat>, s: S) -> Result<S::Ok, S::Error> {
        match f {
            Some(f) => s.serialize_str(f.as_str()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<GraphFormat>, D::Error> {
        let raw: Option<String> = Option::deserialize(d)?;
        raw.map(|s| s.parse().map_err(serde::de::Error::custom)).transpose()
    }
}

impl ExperimentConfig {
    pub fn new(graph: impl Into<PathBuf>, detector: Detector, seed: u64) -> Self {
        Self {
            graph: graph.into(),
            format: None,
            detector,
            seed,
            target: TargetSelector::Largest,
            budget_frac: DEFAULT_BUDGET_FRACTION,
            mode: RecoveryMode::Oracle,
            energy: DEFAULT_ENERGY,
            record_timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.budget_frac > 0.0 && self.budget_frac <= 1.0) {
            return Err(Error::Config(format!(
                "budget fraction {} not in (0, 1]",
                self.budget_frac
            )));
        }
        if !(self.energy > 0.0 && self.energy <= 1.0) {
            return Err(Error::Config(format!("energy {} not in (0, 1]", self.energy)));
        }
        Ok(())
    }

    pub fn dataset_name(&self) -> String {
        self.graph
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("graph")
            .to_owned()
    }

    pub fn load_graph(&self) -> Result<Graph> {
        let path = resolve_dataset(&self.graph);
        let format = self.format.unwrap_or_else(|| GraphFormat::from_path(&path));
        read_graph(&path, format)
    }
}

/// `path` itself when it exists, otherwise `path` under `$COMMHIDE_DATA_DIR`.
pub fn resolve_dataset(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_owned();
    }
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let candidate = Path::new(&dir).join(path);
            if candidate.exists() {
                candidate
            } else {
                path.to_owned()
            }
        }
        None => path.to_owned(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TargetInfo {
    pub community: usize,
    pub size: usize,
    pub labels: Vec<String>,
    pub budget: usize,
}

/// Where the partition behind a metrics row came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub graph: GraphTag,
    pub detected_on: GraphTag,
    pub detector: Detector,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFacts {
    pub graph: GraphTag,
    pub nodes: usize,
    pub edges: usize,
    pub connected: bool,
    /// Graph permanence under the deception-time partition.
    pub permanence: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralPair {
    pub pair: String,
    pub k: usize,
    pub distance: f64,
}

impl SpectralPair {
    fn new(pair: &str, d: SpectralDistance) -> Self {
        Self {
            pair: pair.to_owned(),
            k: d.k,
            distance: d.value,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub load_ms: f64,
    /// Detection on `G` plus the NEURAL run.
    pub deception_ms: f64,
    pub recovery_ms: f64,
    pub evaluation_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub dataset: String,
    pub config: ExperimentConfig,
    pub target: TargetInfo,
    pub recovery_target: usize,
    pub graphs: Vec<GraphFacts>,
    pub metrics: Vec<MetricsRow>,
    pub provenance: Vec<Provenance>,
    pub spectral: Vec<SpectralPair>,
    pub deception_log: Vec<EditLogEntry>,
    pub recovery_log: Vec<EditLogEntry>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl ExperimentReport {
    pub fn row(&self, tag: GraphTag) -> &MetricsRow {
        self.metrics
            .iter()
            .find(|r| r.graph == tag)
            .expect("report holds a row for every graph")
    }

    pub fn distance_deceived(&self) -> f64 {
        self.spectral[0].distance
    }

    pub fn distance_recovered(&self) -> f64 {
        self.spectral[1].distance
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Everything a run produced, including the graphs themselves.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub report: ExperimentReport,
    pub original: Graph,
    pub partition: CommunityStructure,
    pub deception: DeceptionRun,
    pub recovery_partition: CommunityStructure,
    pub recovery: RecoveryRun,
    pub evaluation_partitions: [CommunityStructure; 3],
}

impl PipelineRun {
    pub fn deceived(&self) -> &Graph {
        &self.deception.graph
    }

    pub fn recovered(&self) -> &Graph {
        &self.recovery.graph
    }
}

/// Detection on `g`, target selection and NEURAL.
#[derive(Clone, Debug)]
pub struct Deception {
    pub partition: CommunityStructure,
    pub target: usize,
    pub run: DeceptionRun,
}

pub fn deceive(g: &Graph, config: &ExperimentConfig) -> Result<Deception> {
    config.validate()?;
    let partition = config.detector.detect(g, config.seed)?;
    let target = config.target.resolve(g, &partition)?;
    let budget = compute_budget(partition.members(target).len(), config.budget_frac);
    let run = neural(g, &partition, target, budget)?;
    Ok(Deception { partition, target, run })
}

/// The partition R-NEURAL worked against and its result.
#[derive(Clone, Debug)]
pub struct Recovery {
    pub partition: CommunityStructure,
    pub target: usize,
    pub run: RecoveryRun,
}

/// R-NEURAL on `deceived`, whose node ids must match the graph `original`
/// was detected on.
pub fn recover(
    deceived: &Graph,
    original: &CommunityStructure,
    target: usize,
    budget: usize,
    config: &ExperimentConfig,
) -> Result<Recovery> {
    original.check_graph(deceived)?;
    original.check_index(target)?;
    let (partition, target) = match config.mode {
        RecoveryMode::Oracle => (original.clone(), target),
        RecoveryMode::Redetect => {
            let redetected = config.detector.detect(deceived, config.seed)?;
            let idx = match_community(&redetected, original.members(target))?;
            (redetected, idx)
        }
    };
    let run = r_neural(deceived, &partition, target, budget)?;
    Ok(Recovery { partition, target, run })
}

pub fn run_pipeline(config: &ExperimentConfig) -> Result<ExperimentReport> {
    Ok(run_experiment(config)?.report)
}

/// Loads the configured graph and runs the full pipeline on it.
pub fn run_experiment(config: &ExperimentConfig) -> Result<PipelineRun> {
    config.validate()?;
    let start = Instant::now();
    let g = config.load_graph()?;
    let load_ms = ms_since(start);
    let mut run = run_on_graph(&g, &config.dataset_name(), config)?;
    if let Some(t) = run.report.timings.as_mut() {
        t.load_ms = load_ms;
    }
    Ok(run)
}

/// Runs the pipeline on an in-memory graph. `config.graph` is only echoed.
pub fn run_on_graph(g: &Graph, dataset: &str, config: &ExperimentConfig) -> Result<PipelineRun> {
    config.validate()?;
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut timings = Timings::default();
    let mut warnings = Vec::new();
    if !g.is_connected() {
        warnings.push(format!("{dataset}: input graph is not connected"));
    }

    let clock = Instant::now();
    let Deception { partition: cs, target, run: deception } = deceive(g, config)?;
    timings.deception_ms = ms_since(clock);
    let target_nodes = cs.members(target).to_vec();
    let budget = deception.budget;
    let deceived = &deception.graph;

    let clock = Instant::now();
    let Recovery {
        partition: recovery_partition,
        target: recovery_target,
        run: recovery,
    } = recover(deceived, &cs, target, budget, config)?;
    timings.recovery_ms = ms_since(clock);
    let recovered = &recovery.graph;

    let clock = Instant::now();
    let states = [(GraphTag::Original, g), (GraphTag::Deceived, deceived), (GraphTag::Recovered, recovered)];
    let mut metrics = Vec::new();
    let mut provenance = Vec::new();
    let mut graphs = Vec::new();
    let mut partitions = Vec::new();
    for (tag, graph) in states {
        let detected = config.detector.detect(graph, config.seed)?;
        metrics.push(MetricsRow::evaluate(tag, graph, &detected)?);
        provenance.push(Provenance {
            graph: tag,
            detected_on: tag,
            detector: config.detector,
            seed: config.seed,
        });
        graphs.push(GraphFacts {
            graph: tag,
            nodes: graph.node_count(),
            edges: graph.edge_count(),
            connected: graph.is_connected(),
            permanence: graph_permanence(graph, &cs)?,
        });
        partitions.push(detected);
    }
    let spectral = vec![
        SpectralPair::new("G,G'", spectral_distance(g, deceived, config.energy)?),
        SpectralPair::new("G,G''", spectral_distance(g, recovered, config.energy)?),
    ];
    timings.evaluation_ms = ms_since(clock);

    let report = ExperimentReport {
        dataset: dataset.to_owned(),
        config: config.clone(),
        target: TargetInfo {
            community: target,
            size: target_nodes.len(),
            labels: target_nodes.iter().map(|&v| g.label(v).to_owned()).collect(),
            budget,
        },
        recovery_target,
        graphs,
        metrics,
        provenance,
        spectral,
        deception_log: deception.log_entries(),
        recovery_log: recovery.log_entries(),
        warnings,
        timings: config.record_timings.then_some(timings),
    };
    let evaluation_partitions: [CommunityStructure; 3] =
        partitions.try_into().expect("three graph states");
    Ok(PipelineRun {
        report,
        original: g.clone(),
        partition: cs,
        deception,
        recovery_partition,
        recovery,
        evaluation_partitions,
    })
}

fn ms_since(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::planted_partition;

    #[test]
    fn budget_rounding() {
        assert_eq!(compute_budget(20, 0.3), 6);
        assert_eq!(compute_budget(1, 0.3), 1);
        assert_eq!(compute_budget(5, 0.3), 2);
        assert_eq!(compute_budget(4, 0.3), 1);
        assert_eq!(compute_budget(10, 1.0), 10);
    }

    #[test]
    fn target_selector_syntax() {
        assert_eq!("largest".parse::<TargetSelector>().unwrap(), TargetSelector::Largest);
        assert_eq!("index:3".parse::<TargetSelector>().unwrap(), TargetSelector::Index(3));
        assert_eq!(
            "nodes:a, b,c".parse::<TargetSelector>().unwrap(),
            TargetSelector::Nodes(vec!["a".into(), "b".into(), "c".into()])
        );
        assert!("index:x".parse::<TargetSelector>().is_err());
        assert!("nodes:".parse::<TargetSelector>().is_err());
        assert!("biggest".parse::<TargetSelector>().is_err());
        let t = TargetSelector::Nodes(vec!["x".into(), "y".into()]);
        assert_eq!(t.to_string().parse::<TargetSelector>().unwrap(), t);
    }

    #[test]
    fn invalid_configs() {
        let mut c = ExperimentConfig::new("x.gml", Detector::Louvain, 1);
        c.budget_frac = 0.0;
        assert!(c.validate().is_err());
        c.budget_frac = 0.3;
        c.energy = 1.2;
        assert!(c.validate().is_err());
    }

    #[test]
    fn pipeline_uses_redetected_partitions() {
        let (g, _) = planted_partition(&[12, 12, 12], 0.6, 0.05, 3);
        let config = ExperimentConfig::new("planted", Detector::Louvain, 7);
        let run = run_on_graph(&g, "planted", &config).unwrap();
        for p in &run.report.provenance {
            assert_eq!(p.graph, p.detected_on);
        }
        assert_eq!(run.report.metrics.len(), 3);
        assert_eq!(run.evaluation_partitions[0], run.partition);
        assert!(run.report.deception_log.len() <= run.report.target.budget);
    }

    #[test]
    fn unresolvable_target() {
        let (g, _) = planted_partition(&[6, 6], 0.8, 0.1, 1);
        let mut config = ExperimentConfig::new("planted", Detector::Louvain, 1);
        config.target = TargetSelector::Index(99);
        assert!(run_on_graph(&g, "planted", &config).is_err());
        config.target = TargetSelector::Nodes(vec!["nope".into()]);
        assert!(run_on_graph(&g, "planted", &config).is_err());
    }

    #[test]
    fn config_json_round_trip() {
        let mut c = ExperimentConfig::new("data/dolphins.gml", Detector::LabelPropagation, 4);
        c.target = TargetSelector::Nodes(vec!["Beak".into()]);
        c.mode = RecoveryMode::Redetect;
        c.format = Some(GraphFormat::Gml);
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"labelprop\""));
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&json).unwrap(), c);
        let minimal: ExperimentConfig =
            serde_json::from_str(r#"{"graph":"a.txt","detector":"louvain","seed":2}"#).unwrap();
        assert_eq!(minimal, ExperimentConfig::new("a.txt", Detector::Louvain, 2));
    }
}
