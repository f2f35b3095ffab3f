//! Command-line front end: reads game and type-space files, runs the
//! analyses of the `superrational` crate and renders a [`report::Report`]
//! as a table or as JSON.
//!
//! Exit codes: 0 on success (warnings allowed), 1 on an internal error
//! such as a failed write of the report, 2 on any problem with the input.

pub mod analyze;
pub mod args;
pub mod report;
pub mod spaces;

use std::fmt;
use std::path::Path;

use superrational::bk_types::{make_superrational_bk_space, make_superrational_bk_space_mixed};
use superrational::epistemic::{make_superrational_space, make_superrational_space_mixed};
use superrational::format::{parse_game, parse_type_space, TypeSpace};

use crate::analyze::{analyze_game, AnalyzeOptions};
use crate::args::{AnalyzeArgs, Cli, Command, Format, Kind, OptimizerArgs, TypesArgs};
use crate::report::{CommandEcho, Report};
use crate::spaces::{check_space, TypesOptions};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<superrational::Error> for CliError {
    fn from(e: superrational::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn echo(name: &str, file: &Path, options: Vec<String>) -> CommandEcho {
    CommandEcho {
        name: name.into(),
        file: file.display().to_string(),
        options,
    }
}

fn run_analyze(a: &AnalyzeArgs) -> Result<Report, CliError> {
    let game = parse_game(&read(&a.file)?)?;
    let mut options = Vec::new();
    if a.mixed {
        options.push("--mixed".to_string());
    }
    if a.nash2p {
        options.push("--nash2p".to_string());
    }
    analyze_game(
        &game,
        echo("analyze", &a.file, options),
        AnalyzeOptions {
            mixed: a.mixed,
            nash2p: a.nash2p,
        },
        &a.optimizer.config(),
    )
}

fn build_space(t: &TypesArgs, opt: &OptimizerArgs) -> Result<TypeSpace, CliError> {
    let text = read(&t.file)?;
    if !t.make_superrational {
        return Ok(parse_type_space(&text, t.file.parent())?);
    }
    let game = parse_game(&text)?;
    let cfg = opt.config();
    cfg.validate()?;
    Ok(match (t.kind, t.mixed) {
        (Kind::Harsanyi, false) => TypeSpace::Harsanyi(make_superrational_space(&game)?),
        (Kind::Harsanyi, true) => TypeSpace::Harsanyi(make_superrational_space_mixed(&game, &cfg)?),
        (Kind::Bk, false) => TypeSpace::Bk(make_superrational_bk_space(&game)?),
        (Kind::Bk, true) => TypeSpace::Bk(make_superrational_bk_space_mixed(&game, &cfg)?),
    })
}

fn run_types(t: &TypesArgs) -> Result<Report, CliError> {
    let space = build_space(t, &t.optimizer)?;
    let strategies = t.strategies.as_deref().map(read).transpose()?;
    let mut options = Vec::new();
    if t.make_superrational {
        options.push("--make-superrational".to_string());
        options.push(format!(
            "--kind {}",
            match t.kind {
                Kind::Harsanyi => "harsanyi",
                Kind::Bk => "bk",
            }
        ));
        if t.mixed {
            options.push("--mixed".to_string());
        }
    }
    if let Some(p) = &t.strategies {
        options.push(format!("--strategies {}", p.display()));
    }
    if let Some(s) = &t.types {
        options.push(format!("--types {s}"));
    }
    if let Some(s) = &t.states {
        options.push(format!("--states {s}"));
    }
    if t.weak {
        options.push("--weak".to_string());
    }
    check_space(
        &space,
        echo("types", &t.file, options),
        TypesOptions {
            strategies: strategies.as_deref(),
            types: t.types.as_deref(),
            states: t.states.as_deref(),
            weak: t.weak,
        },
        &t.optimizer.config(),
    )
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Analyze(a) => run_analyze(a),
        Command::Types(t) => run_types(t),
    }
}

pub fn format_of(cli: &Cli) -> Format {
    match &cli.command {
        Command::Analyze(a) => a.format,
        Command::Types(t) => t.format,
    }
}

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Table => Ok(report.to_table()),
        Format::Json => report.to_json().map_err(|e| CliError::Internal(e.to_string())),
    }
}
