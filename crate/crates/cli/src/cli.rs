//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use outerspace_core::stretch::DEFAULT_CYLINDER_CAP;
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(name = "outerspace", version, about = "Stretching factors, Lipschitz distortion and currents for free group automorphisms")]
pub struct Cli {
    /// Worker threads for sampling experiments (default: one per core)
    #[arg(long, global = true)]
    #[serde(skip)]
    pub threads: Option<usize>,

    /// Indent the JSON report
    #[arg(long, global = true)]
    #[serde(skip)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generic stretching factor λ_A of an automorphism or a marked graph
    #[command(subcommand)]
    Stretch(StretchCommand),
    /// Extremal Lipschitz distortion Λ(T, S) and d_L
    Lipschitz(LipschitzArgs),
    /// Candidate loops of a marked graph
    Candidates(GraphArgs),
    /// Current weights and J-current values
    #[command(subcommand)]
    Current(CurrentCommand),
    /// Volume entropy of a marked graph
    Entropy(GraphArgs),
    /// λ_A(φⁿ) or Λ_A(φⁿ) for n = 1..nmax, optionally with a growth fit
    Growth(GrowthArgs),
    /// Sampling experiments and the acceptance matrix
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Remove degree-two vertices from a graph file
    Collapse(CollapseArgs),
    /// Certify an automorphism and print its inverse
    Certify(AutArgs),
}

/// Exactly one of `--aut` and `--tree`.
#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Automorphism, e.g. "a->ab; b->b"
    #[arg(long)]
    pub aut: Option<String>,
    /// Marked graph: JSON file or rose:<lengths>
    #[arg(long)]
    pub tree: Option<String>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StretchCommand {
    /// Exact value from the drift machine (or cylinder expectations)
    Exact {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = DEFAULT_CYLINDER_CAP)]
        cylinder_cap: usize,
    },
    /// Monte Carlo estimate along non-backtracking walks
    Mc {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 1_000_000)]
        steps: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Args, Serialize)]
pub struct LipschitzArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
}

#[derive(Debug, Args, Serialize)]
pub struct GraphArgs {
    /// JSON file or rose:<lengths>
    #[arg(long)]
    pub tree: String,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurrentCommand {
    /// Weights on all reduced words up to a length
    Weights {
        /// uniform:<N>, word:<w> or j:<graph>
        #[arg(long)]
        current: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// certified tail for J-currents
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
    /// One weight of the J-current of a marked graph
    JWeight {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
    /// Intersection form ⟨T, μ⟩
    Intersect {
        #[arg(long)]
        tree: String,
        #[arg(long)]
        current: String,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Generic,
    Extremal,
}

#[derive(Debug, Args, Serialize)]
pub struct GrowthArgs {
    #[arg(long)]
    pub aut: String,
    #[arg(long, value_enum, default_value_t = Mode::Generic)]
    pub mode: Mode,
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    /// Fit c λⁿ nᵐ to the sequence
    #[arg(long)]
    pub fit: bool,
    /// Largest polynomial degree tried by the fit
    #[arg(long, default_value_t = 4)]
    pub m_max: u32,
    /// Write a log plot of s(n)/(λⁿnᵐ) (implies --fit)
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Walk length for powers whose exact drift is out of budget
    #[arg(long, default_value_t = 200_000)]
    pub mc_steps: usize,
    #[arg(long, default_value_t = 20)]
    pub mc_trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentCommand {
    /// Upper bounds on inf λ_A/Λ_A from random automorphisms and φ_{N,N}
    RhoScan(ExperimentArgs),
    /// log λ_A(φ) against log λ_A(φ⁻¹)
    InverseScan(ExperimentArgs),
    /// Histogram of λ_A/Λ_A
    RatioHistogram(ExperimentArgs),
    /// Run the acceptance checks and print a pass/fail matrix
    PaperSuite(SuiteArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct ExperimentArgs {
    /// JSON config; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Generators multiplied per random automorphism
    #[arg(long)]
    pub word_count: Option<usize>,
    /// Write <kind>.json, <kind>.csv and <kind>.svg here
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SuiteArgs {
    /// Criteria to run, e.g. 1,4,10 (default: all)
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CollapseArgs {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct AutArgs {
    #[arg(long)]
    pub aut: String,
}
