//! Command-line front end: train, parse, eval, grid, ours, stats and
//! oracle-trace over CoNLL-U treebanks.
//!
//! Exit codes: 0 on success, 2 for usage and configuration problems, 1 for
//! runtime failures.

mod commands;
mod config;
mod jobs;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::ExperimentConfig;

#[derive(Parser)]
#[command(
    name = "crossparse",
    about = "Bilingual transition-based dependency parser with tunable parameter sharing",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ExperimentArgs {
    /// Experiment config file (flat key = value lines).
    #[arg(long)]
    config: PathBuf,
    /// Sharing strategy, e.g. C=x,W=h,S=id (overrides the file).
    #[arg(long)]
    strategy: Option<String>,
    /// Random seed (the CROSSPARSE_SEED env var beats this).
    #[arg(long)]
    seed: Option<u64>,
    /// Training epochs.
    #[arg(long)]
    epochs: Option<usize>,
    /// Training sentences sampled per language.
    #[arg(long)]
    sample_size: Option<usize>,
    /// Output directory for reports, checkpoints and manifests.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Parallel training jobs for grid/ours.
    #[arg(long)]
    jobs: Option<usize>,
    /// Ours: comma-separated target language(s).
    #[arg(long)]
    target: Option<String>,
}

impl ExperimentArgs {
    fn load(&self) -> anyhow::Result<ExperimentConfig> {
        let mut overrides = BTreeMap::new();
        if let Some(v) = &self.strategy {
            overrides.insert("strategy".to_string(), v.clone());
        }
        if let Some(v) = self.seed {
            overrides.insert("seed".to_string(), v.to_string());
        }
        if let Some(v) = self.epochs {
            overrides.insert("epochs".to_string(), v.to_string());
        }
        if let Some(v) = self.sample_size {
            overrides.insert("sample_size".to_string(), v.to_string());
        }
        if let Some(v) = &self.out_dir {
            overrides.insert("out_dir".to_string(), v.display().to_string());
        }
        if let Some(v) = self.jobs {
            overrides.insert("jobs".to_string(), v.to_string());
        }
        if let Some(v) = &self.target {
            overrides.insert("target".to_string(), v.clone());
        }
        ExperimentConfig::load(&self.config, &overrides).map_err(ConfigProblem::wrap)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Train one model (the monolingual baseline with a single language).
    Train(ExperimentArgs),
    /// Parse a CoNLL-U file with a trained model.
    Parse {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        input: PathBuf,
        /// Language code the model was trained with.
        #[arg(long)]
        language: String,
        /// Output path (stdout when omitted).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Score a system output against gold (optionally vs a baseline).
    Eval {
        #[arg(long)]
        gold: PathBuf,
        #[arg(long)]
        system: PathBuf,
        /// Second system for a paired randomization test.
        #[arg(long)]
        baseline: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        shuffles: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Train and rank all 27 sharing strategies plus two mono baselines.
    Grid(ExperimentArgs),
    /// Tuned sharing: 9-cell sweep with a shared MLP, dev selection, test
    /// evaluation against the monolingual baseline.
    Ours(ExperimentArgs),
    /// Sentence and token counts of treebank files.
    Stats {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print step-by-step oracle derivations for gold sentences.
    OracleTrace {
        #[arg(long)]
        input: PathBuf,
        /// 1-based sentence number (all sentences when omitted).
        #[arg(long)]
        sentence: Option<usize>,
    },
}

/// Marker for errors that should exit with code 2.
#[derive(Debug)]
struct ConfigProblem(anyhow::Error);

impl ConfigProblem {
    fn wrap(e: anyhow::Error) -> anyhow::Error {
        anyhow::Error::new(ConfigProblem(e))
    }
}

impl std::fmt::Display for ConfigProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigProblem {}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ConfigProblem>().is_some() {
        return 2;
    }
    for cause in err.chain() {
        if let Some(core) = cause.downcast_ref::<crossparse::Error>() {
            if matches!(
                core,
                crossparse::Error::Config(_)
                    | crossparse::Error::Usage(_)
                    | crossparse::Error::Format { .. }
            ) {
                return 2;
            }
        }
    }
    1
}

fn run() -> anyhow::Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Train(args) => commands::cmd_train(&args.load()?),
        Command::Parse {
            model,
            input,
            language,
            output,
        } => commands::cmd_parse(&model, &input, &language, output.as_deref()),
        Command::Eval {
            gold,
            system,
            baseline,
            shuffles,
            seed,
        } => commands::cmd_eval(&gold, &system, baseline.as_deref(), shuffles, seed),
        Command::Grid(args) => commands::cmd_grid(&args.load()?),
        Command::Ours(args) => commands::cmd_ours(&args.load()?),
        Command::Stats { files } => commands::cmd_stats(&files),
        Command::OracleTrace { input, sentence } => commands::cmd_oracle_trace(&input, sentence),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
