use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "atkinson",
    version,
    about = "Characters on quasi-shuffle and Connes-Kreimer Hopf algebras via Atkinson recursion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Organic,
    Shuffle,
    Diffusion,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest word or forest norm in sweeps.
    #[arg(long, global = true)]
    pub max_weight: Option<u64>,

    /// Largest node count in forest sweeps.
    #[arg(long, global = true)]
    pub max_nodes: Option<usize>,

    /// Use each model's printed sign convention instead of the recursion's.
    #[arg(long, global = true)]
    pub paper_sign: bool,

    /// Diffusion grid step.
    #[arg(long, global = true)]
    pub grid_step: Option<f64>,

    /// Diffusion grid radius.
    #[arg(long, global = true)]
    pub grid_radius: Option<f64>,

    /// Diffusion Monte-Carlo sample count.
    #[arg(long, global = true)]
    pub mc_samples: Option<u64>,

    /// Diffusion Monte-Carlo seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Diffusion comparison tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quasi-shuffle product of two words.
    QshProd { u: String, v: String },
    /// Shuffle product of two words.
    ShProd { u: String, v: String },
    /// Deconcatenation coproduct of a word.
    Deconcat { w: String },
    /// Connes-Kreimer coproduct of a forest.
    Coproduct { forest: String },
    /// Arborification of a forest.
    Alpha { forest: String },
    /// Character values on words, with closed formulas.
    Phi {
        #[arg(long, value_enum, default_value_t = ModelKind::Organic)]
        model: ModelKind,
        /// Words to evaluate; all words up to --max-weight when absent.
        #[arg(long = "word")]
        words: Vec<String>,
    },
    /// Antiarborified character values on forests, with closed formulas.
    PhiArb {
        #[arg(long, value_enum, default_value_t = ModelKind::Organic)]
        model: ModelKind,
        /// Forests to evaluate; a sweep bounded by --max-weight and
        /// --max-nodes when absent.
        #[arg(long = "forest")]
        forests: Vec<String>,
    },
    /// Run the Rota-Baxter, axiom, well-behaved and factorization checks.
    Verify {
        #[arg(long, value_enum, default_value_t = ModelKind::Organic)]
        model: ModelKind,
        /// JSON report path, always written.
        #[arg(long, default_value = "verify-report.json")]
        report: PathBuf,
    },
    /// K(w) from the closed formula, the recursion and the iterate itself.
    CountShuffle {
        /// Words to count; all words up to --max-weight when absent.
        #[arg(long = "word")]
        words: Vec<String>,
        /// The word η of the shuffle model.
        #[arg(long, default_value = "1,2")]
        eta: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::QshProd { .. } => "qsh-prod",
            Command::ShProd { .. } => "sh-prod",
            Command::Deconcat { .. } => "deconcat",
            Command::Coproduct { .. } => "coproduct",
            Command::Alpha { .. } => "alpha",
            Command::Phi { .. } => "phi",
            Command::PhiArb { .. } => "phi-arb",
            Command::Verify { .. } => "verify",
            Command::CountShuffle { .. } => "count-shuffle",
        }
    }

    pub fn model(&self) -> Option<ModelKind> {
        match self {
            Command::Phi { model, .. }
            | Command::PhiArb { model, .. }
            | Command::Verify { model, .. } => Some(*model),
            _ => None,
        }
    }
}
