//! Command-line interface: `train`, `classify`, `simulate`, `inspect` and
//! `export-plots`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use causaltrust_core::classify::{self, apply_learning_policy};
use causaltrust_core::density::{DEFAULT_RESOLUTION, DEFAULT_SMOOTHING};
use causaltrust_core::extract::{ExtractOptions, InputMode, DEFAULT_BARE_ADVERB};
use causaltrust_core::{
    AdverbLexicon, Hyperparameters, LearnMode, RepeatPolicy, UnknownEdgePolicy, WeightedCausalGraph,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::corpus_file::read_corpus;
use crate::graph_file::{self, GraphDocument};
use crate::lexicon_file::resolve_lexicon;
use crate::report::{learning_summary, transcript, VerdictReport};
use crate::simulate::{self, Preset, SimulationPlan};
use crate::{AppError, ExitStatus};

#[derive(Debug, Parser)]
#[command(
    name = "causaltrust",
    version,
    about = "Score causal claims and sources against a weighted causal graph"
)]
pub struct Cli {
    /// Lexicon JSON overriding the built-in adverb table (falls back to $CAUSALTRUST_LEXICON).
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    /// Grid resolution M. Defaults to the graph's own resolution, or 1000.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Suppress informational output on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build or update a graph from corpora.
    Train(TrainArgs),
    /// Classify a corpus against a trained graph.
    Classify(ClassifyArgs),
    /// Run a synthetic train/classify experiment.
    Simulate(SimulateArgs),
    /// Summarize a graph.
    Inspect(InspectArgs),
    /// Write per-edge prior/posterior CSVs.
    ExportPlots(ExportArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Treat inputs as free text instead of `cause | adverb | effect` lines.
    #[arg(long)]
    pub free_text: bool,
    /// Adverb assumed for a bare "X causes Y" in free text.
    #[arg(long, default_value = DEFAULT_BARE_ADVERB)]
    pub default_adverb: String,
}

impl InputArgs {
    fn options(&self) -> ExtractOptions {
        ExtractOptions {
            mode: if self.free_text {
                InputMode::FreeText
            } else {
                InputMode::Structured
            },
            default_adverb: self.default_adverb.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RepeatArg {
    /// Fuse each distinct claim once per source.
    Once,
    /// Fuse every occurrence.
    Every,
}

impl From<RepeatArg> for RepeatPolicy {
    fn from(value: RepeatArg) -> Self {
        match value {
            RepeatArg::Once => RepeatPolicy::OncePerSource,
            RepeatArg::Every => RepeatPolicy::EveryOccurrence,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LearnModeArg {
    SourceLevel,
    PerCausal,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Graph file; updated in place if it exists.
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "once")]
    pub repeat_policy: RepeatArg,
    /// Corpus files; each file is one source.
    #[arg(required = true)]
    pub corpora: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HyperArgs {
    /// Entropy weight.
    #[arg(long, default_value_t = 0.2)]
    pub w: f64,
    /// Exponent applied to the combined score.
    #[arg(long, default_value_t = 3.0)]
    pub sigma: f64,
    /// Causal threshold.
    #[arg(long, default_value_t = 0.30)]
    pub beta: f64,
    /// Source threshold.
    #[arg(long, default_value_t = 0.35)]
    pub gamma: f64,
    /// Minimum entropy decrease for an edge to be scored.
    #[arg(long, default_value_t = 1e-9)]
    pub tau_h: f64,
    #[arg(long, default_value_t = DEFAULT_SMOOTHING)]
    pub eps_smooth: f64,
    /// `exclude` or `constant:<p>`.
    #[arg(long, default_value = "exclude", value_parser = parse_unknown_edge_policy)]
    pub unknown_edge_policy: UnknownEdgePolicy,
    #[arg(long, value_enum, default_value = "source-level")]
    pub learn_mode: LearnModeArg,
    /// Minimum confidence (Ω or ε) required to learn.
    #[arg(long)]
    pub min_confidence: Option<f64>,
    #[arg(long, value_enum, default_value = "once")]
    pub repeat_policy: RepeatArg,
}

fn parse_unknown_edge_policy(raw: &str) -> Result<UnknownEdgePolicy, String> {
    match raw.trim() {
        "exclude" => Ok(UnknownEdgePolicy::Exclude),
        other => other
            .strip_prefix("constant:")
            .and_then(|p| p.parse::<f64>().ok())
            .map(UnknownEdgePolicy::ScoreConstant)
            .ok_or_else(|| format!("expected `exclude` or `constant:<p>`, got `{other}`")),
    }
}

impl HyperArgs {
    fn hyperparameters(&self, resolution: usize) -> Result<Hyperparameters, AppError> {
        let hp = Hyperparameters {
            w: self.w,
            sigma: self.sigma,
            beta: self.beta,
            gamma: self.gamma,
            resolution,
            eps_smooth: self.eps_smooth,
            tau_h: self.tau_h,
            unknown_edge_policy: self.unknown_edge_policy,
            learn_mode: match self.learn_mode {
                LearnModeArg::SourceLevel => LearnMode::SourceLevel,
                LearnModeArg::PerCausal => LearnMode::PerCausal,
            },
            min_confidence: self.min_confidence,
            repeat_policy: self.repeat_policy.into(),
        };
        hp.validate().map_err(|e| AppError::Usage(e.to_string()))?;
        Ok(hp)
    }
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Write the JSON verdict report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Apply the learning policy and save the updated graph.
    #[arg(long)]
    pub learn: bool,
    #[command(flatten)]
    pub hyper: HyperArgs,
    #[command(flatten)]
    pub input: InputArgs,
    pub corpus: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PresetArg {
    /// usually/normally vs infrequently/seldom
    #[value(name = "scenario-1")]
    Scenario1,
    /// usually/normally vs frequently/regularly
    #[value(name = "scenario-2")]
    Scenario2,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value = "scenario-1")]
    pub preset: PresetArg,
    #[arg(long, default_value_t = simulate::DEFAULT_SEED)]
    pub seed: u64,
    /// Comma-separated training adverbs, overriding the preset.
    #[arg(long, value_delimiter = ',')]
    pub train_adverbs: Option<Vec<String>>,
    /// Comma-separated test adverbs, overriding the preset.
    #[arg(long, value_delimiter = ',')]
    pub test_adverbs: Option<Vec<String>>,
    /// Raw draws for the training corpus (before filtering).
    #[arg(long, default_value_t = simulate::DEFAULT_TRAIN_DRAWS)]
    pub train_draws: usize,
    /// Retained relations in the test corpus.
    #[arg(long, default_value_t = simulate::DEFAULT_TEST_COUNT)]
    pub test_count: usize,
    /// Also apply the learning policy and save the learned graph.
    #[arg(long)]
    pub learn: bool,
    /// Output directory for corpora, graph, report and transcript.
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub hyper: HyperArgs,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `std::env::args`, runs the command and maps errors to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitStatus::Usage.into()
            } else {
                ExitStatus::Success.into()
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitStatus::Success.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_status().into()
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), AppError> {
    if cli.grid.is_some_and(|m| m < 2) {
        return Err(AppError::Usage("--grid must be at least 2".into()));
    }
    match &cli.command {
        Command::Train(args) => cmd_train(cli, args),
        Command::Classify(args) => cmd_classify(cli, args),
        Command::Simulate(args) => cmd_simulate(cli, args),
        Command::Inspect(args) => cmd_inspect(cli, args),
        Command::ExportPlots(args) => cmd_export_plots(cli, args),
    }
}

fn info(cli: &Cli, message: &str) {
    if !cli.quiet {
        eprintln!("{message}");
    }
}

fn read_graph_document(path: &Path) -> Result<GraphDocument, AppError> {
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| AppError::data(path.display().to_string(), e))
}

/// Loads a graph with a lexicon at the graph's own resolution, unless
/// `--grid` asks for a specific one.
fn load_graph_and_lexicon(
    cli: &Cli,
    path: &Path,
) -> Result<(WeightedCausalGraph, AdverbLexicon), AppError> {
    let doc = read_graph_document(path)?;
    let lexicon = resolve_lexicon(cli.lexicon.as_deref(), cli.grid.unwrap_or(doc.resolution))?;
    let graph = graph_file::from_document(doc, &lexicon)
        .map_err(|e| AppError::data(path.display().to_string(), e))?;
    Ok((graph, lexicon))
}

fn cmd_train(cli: &Cli, args: &TrainArgs) -> Result<(), AppError> {
    let (mut graph, lexicon) = if args.graph.exists() {
        load_graph_and_lexicon(cli, &args.graph)?
    } else {
        let lexicon = resolve_lexicon(
            cli.lexicon.as_deref(),
            cli.grid.unwrap_or(DEFAULT_RESOLUTION),
        )?;
        (WeightedCausalGraph::new(lexicon.resolution()), lexicon)
    };
    let options = args.input.options();
    let mut read = 0;
    let mut fused = 0;
    let mut skipped = 0;
    for path in &args.corpora {
        let (corpus, diagnostics) = read_corpus(path, &lexicon, &options)?;
        for d in &diagnostics {
            info(
                cli,
                &format!("{}:{}: skipped: {}", path.display(), d.line, d.reason),
            );
        }
        let summary = graph.ingest(&corpus, &lexicon, args.repeat_policy.into())?;
        skipped += diagnostics.len();
        read += corpus.len();
        fused += summary.fused();
    }
    if read == 0 {
        info(cli, "warning: no causal relations found in the input");
    }
    graph_file::save_graph(&graph, &args.graph)?;
    println!(
        "Trained {}: {} relations read, {} fused, {} lines skipped, {} edges, {} observations",
        args.graph.display(),
        read,
        fused,
        skipped,
        graph.edge_count(),
        graph.observation_count()
    );
    Ok(())
}

fn cmd_classify(cli: &Cli, args: &ClassifyArgs) -> Result<(), AppError> {
    // Range-check before touching any file.
    args.hyper
        .hyperparameters(cli.grid.unwrap_or(DEFAULT_RESOLUTION))?;
    let (mut graph, lexicon) = load_graph_and_lexicon(cli, &args.graph)?;
    let hp = args.hyper.hyperparameters(lexicon.resolution())?;
    let (corpus, diagnostics) = read_corpus(&args.corpus, &lexicon, &args.input.options())?;
    for d in &diagnostics {
        info(
            cli,
            &format!(
                "{}:{}: skipped: {}",
                args.corpus.display(),
                d.line,
                d.reason
            ),
        );
    }
    let verdict = match classify::source_verdict(&graph, &corpus, &hp, &lexicon) {
        Err(causaltrust_core::Error::NoScorableCausals) => {
            return Err(AppError::NoScorableCausals(corpus.source_id().to_owned()))
        }
        other => other?,
    };
    let mut out = transcript(&verdict);
    if let Some(path) = &args.report {
        let json = VerdictReport::from_verdict(&verdict).to_json();
        fs::write(path, json).map_err(|e| AppError::io(path, e))?;
    }
    if args.learn {
        let report = apply_learning_policy(&mut graph, &verdict, &corpus, &hp, &lexicon)?;
        out.push_str(&learning_summary(&report));
        if report.fused() > 0 {
            graph_file::save_graph(&graph, &args.graph)?;
        }
    }
    std::io::stdout()
        .write_all(out.as_bytes())
        .map_err(|e| AppError::io("<stdout>", e))
}

fn cmd_simulate(cli: &Cli, args: &SimulateArgs) -> Result<(), AppError> {
    let resolution = cli.grid.unwrap_or(DEFAULT_RESOLUTION);
    let hp = args.hyper.hyperparameters(resolution)?;
    let lexicon = resolve_lexicon(cli.lexicon.as_deref(), resolution)?;
    let preset = match args.preset {
        PresetArg::Scenario1 => Preset::Divergent,
        PresetArg::Scenario2 => Preset::Similar,
    };
    let owned = |list: &Option<Vec<String>>, fallback: &[&str]| -> Vec<String> {
        list.clone()
            .unwrap_or_else(|| fallback.iter().map(|s| s.to_string()).collect())
    };
    let train = owned(&args.train_adverbs, preset.train_adverbs());
    let test = owned(&args.test_adverbs, preset.test_adverbs());
    let train: Vec<&str> = train.iter().map(String::as_str).collect();
    let test: Vec<&str> = test.iter().map(String::as_str).collect();
    let plan = SimulationPlan::new(&train, &test, args.train_draws, args.test_count, args.seed);
    let outcome = simulate::run(&plan, &hp, &lexicon, args.learn)?;
    simulate::write_artifacts(&outcome, &args.out)?;
    info(cli, &format!("artifacts written to {}", args.out.display()));
    std::io::stdout()
        .write_all(outcome.transcript().as_bytes())
        .map_err(|e| AppError::io("<stdout>", e))
}

fn cmd_inspect(cli: &Cli, args: &InspectArgs) -> Result<(), AppError> {
    let (graph, lexicon) = load_graph_and_lexicon(cli, &args.graph)?;
    let mut out = format!(
        "Graph {} (M = {}): {} concepts, {} edges, {} observations\n",
        args.graph.display(),
        graph.resolution(),
        graph.concepts().count(),
        graph.edge_count(),
        graph.observation_count()
    );
    for edge in graph.edges() {
        let gained = classify::gate(edge.prior(), edge.posterior(), 1e-9);
        out.push_str(&format!(
            "{} -> {}: {} observations [{}], prior entropy {:.6}, posterior entropy {:.6}, posterior mean {:.6}, normalized entropy {:.6}{}\n",
            edge.cause(),
            edge.effect(),
            edge.observation_count(),
            edge.observations().join(", "),
            edge.prior().entropy(),
            edge.posterior().entropy(),
            edge.posterior().mean(),
            lexicon.normalized_entropy(edge.posterior().entropy()),
            if gained { "" } else { " (no knowledge gained yet)" }
        ));
    }
    std::io::stdout()
        .write_all(out.as_bytes())
        .map_err(|e| AppError::io("<stdout>", e))
}

fn cmd_export_plots(cli: &Cli, args: &ExportArgs) -> Result<(), AppError> {
    let (graph, _) = load_graph_and_lexicon(cli, &args.graph)?;
    let files = crate::plots::export_plots(&graph, &args.out)?;
    println!("Wrote {} files to {}", files.len(), args.out.display());
    Ok(())
}
