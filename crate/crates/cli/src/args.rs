use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superrational::OptimizerConfig;

#[derive(Debug, Parser)]
#[command(name = "superrational", version, about = "Superrational and Nash analyses of finite games and type spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symmetry, superrational profiles and Nash equilibria of a game file.
    Analyze(AnalyzeArgs),
    /// Superrational type, strategy and state checks on a type-space file.
    Types(TypesArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Game file (JSON).
    pub file: PathBuf,
    /// Also search for superrational mixed strategies.
    #[arg(long)]
    pub mixed: bool,
    /// Also enumerate mixed Nash equilibria (two-player games).
    #[arg(long)]
    pub nash2p: bool,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TypesArgs {
    /// Type-space file, or a game file with --make-superrational.
    pub file: PathBuf,
    /// Bayesian strategies for a probabilistic space: {"1": {"t": "C"}, ...}.
    #[arg(long, value_name = "FILE")]
    pub strategies: Option<PathBuf>,
    /// Report the state test without the justifiability condition too.
    #[arg(long)]
    pub weak: bool,
    /// Type profile to play in a probabilistic space, e.g. "t,t".
    #[arg(long, value_name = "LIST")]
    pub types: Option<String>,
    /// States of the world for a possibility space, e.g. "C:r,C:u".
    #[arg(long, value_name = "LIST")]
    pub states: Option<String>,
    /// Treat FILE as a game and build a space of superrational types for it.
    #[arg(long)]
    pub make_superrational: bool,
    /// Kind of space to build with --make-superrational.
    #[arg(long, value_enum, default_value_t = Kind::Harsanyi, requires = "make_superrational")]
    pub kind: Kind,
    /// Build a mixed-strategy space with --make-superrational.
    #[arg(long, requires = "make_superrational")]
    pub mixed: bool,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizerArgs {
    /// Optimizer tolerance, relative to the largest payoff magnitude.
    #[arg(long, default_value_t = OptimizerConfig::default().tolerance)]
    pub tol: f64,
    /// Grid points per simplex dimension used to seed the optimizer.
    #[arg(long, default_value_t = OptimizerConfig::default().grid_points_per_dim)]
    pub grid: usize,
    /// Random starting points for the optimizer.
    #[arg(long, default_value_t = OptimizerConfig::default().multistarts)]
    pub starts: usize,
    #[arg(long, default_value_t = OptimizerConfig::default().rng_seed)]
    pub seed: u64,
}

impl OptimizerArgs {
    pub fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            tolerance: self.tol,
            grid_points_per_dim: self.grid,
            multistarts: self.starts,
            rng_seed: self.seed,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Harsanyi,
    Bk,
}
