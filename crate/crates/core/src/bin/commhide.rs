use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commhide::harness::{
    self, compute_budget, metrics_csv, resolve_dataset, text_table, ExperimentConfig, RecoveryMode,
    TargetSelector, DATA_DIR_ENV, DEFAULT_BUDGET_FRACTION,
};
use commhide::metrics::{spectral_distance, GraphTag, MetricsRow, DEFAULT_ENERGY};
use commhide::permanence::permanence_csv;
use commhide::{graph, Detector, Error, Graph, GraphFormat, Result};

#[derive(Parser)]
#[command(name = "commhide", version, about = "Permanence-based community deception and recovery")]
struct Cli {
    /// Directory searched for relative dataset paths that do not exist as given.
    #[arg(long, global = true, env = DATA_DIR_ENV)]
    data_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Detect communities and print them, one line per community.
    Detect {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        detect: DetectArgs,
        #[arg(long)]
        json: bool,
    },
    /// Per-vertex permanence as CSV under the detected partition.
    Perm {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        detect: DetectArgs,
    },
    /// Hide the target community with NEURAL.
    Deceive {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        detect: DetectArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out_graph: Option<PathBuf>,
        #[arg(long)]
        out_log: Option<PathBuf>,
    },
    /// Restore the target community with R-NEURAL.
    Recover {
        #[command(flatten)]
        input: InputArgs,
        /// Graph the target was originally detected on.
        #[arg(long)]
        orig_graph: PathBuf,
        #[command(flatten)]
        detect: DetectArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value = "oracle")]
        mode: RecoveryMode,
        #[arg(long)]
        out_graph: Option<PathBuf>,
        #[arg(long)]
        out_log: Option<PathBuf>,
    },
    /// M, C and PQ by graph as CSV, each against its own detected partition.
    Eval {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        deceived: Option<PathBuf>,
        #[arg(long)]
        recovered: Option<PathBuf>,
        #[command(flatten)]
        detect: DetectArgs,
    },
    /// Spectral distance from the original graph to the others, as JSON.
    Simdist {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        deceived: Option<PathBuf>,
        #[arg(long)]
        recovered: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ENERGY)]
        energy: f64,
    },
    /// Detect, deceive, recover and evaluate in one run.
    Pipeline {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        detect: DetectArgs,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value = "oracle")]
        mode: RecoveryMode,
        #[arg(long, default_value_t = DEFAULT_ENERGY)]
        energy: f64,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the aligned text table instead of JSON.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        timings: bool,
    },
    /// Run every dataset x detector x seed combination.
    Sweep {
        /// JSON array of experiment configs; replaces the grid flags.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        graphs: Vec<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "louvain")]
        detectors: Vec<Detector>,
        /// Seeds as a list (`1,2,3`) or an inclusive range (`1..10`).
        #[arg(long, default_value = "1..10")]
        seeds: String,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value = "oracle")]
        mode: RecoveryMode,
        #[arg(long, default_value_t = DEFAULT_ENERGY)]
        energy: f64,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct InputArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Inferred from the extension when omitted.
    #[arg(long)]
    format: Option<GraphFormat>,
}

#[derive(Args)]
struct DetectArgs {
    #[arg(long, default_value = "louvain")]
    detector: Detector,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value = "largest")]
    target: TargetSelector,
    #[arg(long, default_value_t = DEFAULT_BUDGET_FRACTION)]
    budget_frac: f64,
}

struct Ctx {
    data_dir: Option<PathBuf>,
}

impl Ctx {
    fn resolve(&self, path: &Path) -> PathBuf {
        if path.exists() {
            return path.to_owned();
        }
        match &self.data_dir {
            Some(dir) if path.is_relative() && dir.join(path).exists() => dir.join(path),
            _ => resolve_dataset(path),
        }
    }

    fn load(&self, path: &Path, format: Option<GraphFormat>) -> Result<Graph> {
        let path = self.resolve(path);
        graph::read_graph(&path, format.unwrap_or_else(|| GraphFormat::from_path(&path)))
    }

    /// Loads `path` and re-indexes it like `reference` when the node sets agree.
    fn load_like(&self, path: &Path, format: Option<GraphFormat>, reference: &Graph) -> Result<Graph> {
        let g = self.load(path, format)?;
        Ok(g.aligned_to(reference).unwrap_or(g))
    }

    fn config(&self, input: &InputArgs, detect: &DetectArgs, budget: &BudgetArgs) -> ExperimentConfig {
        let mut c = ExperimentConfig::new(self.resolve(&input.graph), detect.detector, detect.seed);
        c.format = input.format;
        c.target = budget.target.clone();
        c.budget_frac = budget.budget_frac;
        c
    }
}

fn write_out(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

fn save_graph(g: &Graph, path: &Path) -> Result<()> {
    graph::write_graph(g, path, GraphFormat::from_path(path))
}

fn parse_seeds(list: &str) -> Result<Vec<u64>> {
    let bad = || Error::Config(format!("bad seed list `{list}`"));
    if let Some((a, b)) = list.split_once("..") {
        let (a, b): (u64, u64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
        return if a <= b { Ok((a..=b).collect()) } else { Err(bad()) };
    }
    list.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

fn run(cli: Cli) -> Result<()> {
    let ctx = Ctx { data_dir: cli.data_dir };
    match cli.command {
        Command::Detect { input, detect, json } => {
            let g = ctx.load(&input.graph, input.format)?;
            let cs = detect.detector.detect(&g, detect.seed)?;
            if json {
                println!("{}", cs.to_json(&g)?);
            } else {
                print!("{}", cs.to_text(&g));
            }
        }
        Command::Perm { input, detect } => {
            let g = ctx.load(&input.graph, input.format)?;
            let cs = detect.detector.detect(&g, detect.seed)?;
            print!("{}", permanence_csv(&g, &cs)?);
        }
        Command::Deceive { input, detect, budget, out_graph, out_log } => {
            let config = ctx.config(&input, &detect, &budget);
            let g = config.load_graph()?;
            let d = harness::deceive(&g, &config)?;
            if let Some(p) = out_graph {
                save_graph(&d.run.graph, &p)?;
            }
            if let Some(p) = out_log {
                write_out(&p, &d.run.log_json()?)?;
            }
            let summary = json!({
                "target": d.target,
                "target_size": d.run.target_nodes.len(),
                "budget": d.run.budget,
                "edits": d.run.log.len(),
                "permanence_before": d.run.initial_permanence,
                "permanence_after": d.run.final_permanence,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Command::Recover { input, orig_graph, detect, budget, mode, out_graph, out_log } => {
            let original = ctx.load(&orig_graph, input.format)?;
            let deceived = ctx.load(&input.graph, input.format)?.aligned_to(&original)?;
            let mut config = ctx.config(&input, &detect, &budget);
            config.mode = mode;
            config.validate()?;
            let cs = detect.detector.detect(&original, detect.seed)?;
            let target = budget.target.resolve(&original, &cs)?;
            let b = compute_budget(cs.members(target).len(), budget.budget_frac);
            let r = harness::recover(&deceived, &cs, target, b, &config)?;
            if let Some(p) = out_graph {
                save_graph(&r.run.graph, &p)?;
            }
            if let Some(p) = out_log {
                write_out(&p, &r.run.log_json()?)?;
            }
            let summary = json!({
                "target": r.target,
                "budget": b,
                "edits": r.run.log.len(),
                "permanence_before": r.run.initial_permanence,
                "permanence_after": r.run.final_permanence,
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
        }
        Command::Eval { input, deceived, recovered, detect } => {
            let original = ctx.load(&input.graph, input.format)?;
            let mut rows = vec![MetricsRow::evaluate(
                GraphTag::Original,
                &original,
                &detect.detector.detect(&original, detect.seed)?,
            )?];
            for (tag, path) in [(GraphTag::Deceived, deceived), (GraphTag::Recovered, recovered)] {
                if let Some(p) = path {
                    let g = ctx.load_like(&p, input.format, &original)?;
                    rows.push(MetricsRow::evaluate(tag, &g, &detect.detector.detect(&g, detect.seed)?)?);
                }
            }
            print!("{}", metrics_csv(&rows));
        }
        Command::Simdist { input, deceived, recovered, energy } => {
            let original = ctx.load(&input.graph, input.format)?;
            let mut out = Vec::new();
            for (pair, path) in [("G,G'", deceived), ("G,G''", recovered)] {
                if let Some(p) = path {
                    let g = ctx.load_like(&p, input.format, &original)?;
                    let d = spectral_distance(&original, &g, energy)?;
                    out.push(json!({ "pair": pair, "k": d.k, "distance": d.value }));
                }
            }
            if out.is_empty() {
                return Err(Error::Config("give --deceived and/or --recovered".into()));
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Pipeline { input, detect, budget, mode, energy, out, table, timings } => {
            let mut config = ctx.config(&input, &detect, &budget);
            config.mode = mode;
            config.energy = energy;
            config.record_timings = timings;
            let report = harness::run_pipeline(&config)?;
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let json = report.to_json()?;
            if let Some(p) = out {
                write_out(&p, &json)?;
            }
            if table {
                print!("{}", text_table(&report));
            } else {
                println!("{json}");
            }
        }
        Command::Sweep { config, graphs, detectors, seeds, budget, mode, energy, out_csv, out_json } => {
            let configs: Vec<ExperimentConfig> = match config {
                Some(p) => {
                    let text = fs::read_to_string(&p).map_err(|source| Error::Io { path: p, source })?;
                    serde_json::from_str(&text)?
                }
                None => {
                    let seeds = parse_seeds(&seeds)?;
                    let mut all = Vec::new();
                    for g in &graphs {
                        for &d in &detectors {
                            for &s in &seeds {
                                let mut c = ExperimentConfig::new(ctx.resolve(g), d, s);
                                c.target = budget.target.clone();
                                c.budget_frac = budget.budget_frac;
                                c.mode = mode;
                                c.energy = energy;
                                all.push(c);
                            }
                        }
                    }
                    all
                }
            };
            if configs.is_empty() {
                return Err(Error::Config("sweep needs at least one configuration".into()));
            }
            let result = harness::sweep(&configs);
            for f in &result.failures {
                eprintln!("{}", serde_json::to_string(f)?);
            }
            let csv = result.aggregate_csv();
            if let Some(p) = out_json {
                write_out(&p, &serde_json::to_string_pretty(&result)?)?;
            }
            match out_csv {
                Some(p) => write_out(&p, &csv)?,
                None => print!("{csv}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            eprintln!("{}", json!({ "kind": "usage", "message": message.trim() }));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", json!({ "kind": e.kind(), "message": e.to_string() }));
            ExitCode::FAILURE
        }
    }
}
