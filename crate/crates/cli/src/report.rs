//! The structured report shared by both commands, and its two renderings.
//!
//! Players are numbered from 1, profiles are lists of action labels and
//! exact quantities are rational strings. Floating-point values are
//! written in full in JSON and with six decimals in tables.

use std::fmt::Write as _;

use serde::Serialize;
use superrational::OptimizerConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: CommandEcho,
    pub config: ConfigEcho,
    pub results: Results,
    pub warnings: Vec<String>,
    pub theorem_flags: Vec<TheoremFlag>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandEcho {
    pub name: String,
    pub file: String,
    pub options: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub tolerance: f64,
    pub grid: usize,
    pub starts: usize,
}

impl From<&OptimizerConfig> for ConfigEcho {
    fn from(cfg: &OptimizerConfig) -> Self {
        ConfigEcho {
            seed: cfg.rng_seed,
            tolerance: cfg.tolerance,
            grid: cfg.grid_points_per_dim,
            starts: cfg.multistarts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Results {
    Analyze(AnalyzeResults),
    Harsanyi(HarsanyiResults),
    Bk(BkResults),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremFlag {
    pub name: String,
    pub premises: bool,
    pub conclusion: bool,
    pub flag: bool,
}

pub type Profile = Vec<String>;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeResults {
    pub players: usize,
    pub actions: Vec<Vec<String>>,
    pub symmetric: bool,
    pub common_actions: bool,
    /// The remaining pure fields are absent when the players' action lists
    /// differ.
    pub diagonal: Option<Vec<Profile>>,
    pub sr_justifiable: Option<Vec<String>>,
    pub superrational_profiles: Option<Vec<Profile>>,
    pub pure_nash: Vec<Profile>,
    pub mixed: Option<MixedSection>,
    pub mixed_nash: Option<MixedNashSection>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixedSection {
    /// `found` or `empty`.
    pub status: String,
    pub maximizers: Vec<MaximizerOut>,
    pub per_player: Vec<PlayerOptimumOut>,
    pub minimax_gap: Option<f64>,
    pub grid_resolution: usize,
    pub nonconvergence: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximizerOut {
    pub strategy: Vec<f64>,
    pub value: f64,
    pub player_values: Vec<f64>,
    pub stationarity: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlayerOptimumOut {
    pub player: usize,
    pub maximizer: Vec<f64>,
    pub value: f64,
    pub interior_minimizer: Option<PointOut>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointOut {
    pub strategy: Vec<f64>,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixedNashSection {
    /// One entry per equilibrium, holding each player's probabilities.
    pub equilibria: Vec<Vec<Vec<String>>>,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeRow {
    pub player: usize,
    #[serde(rename = "type")]
    pub type_label: String,
    pub superrational: bool,
    pub choice: Option<String>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TypeChoice {
    #[serde(rename = "type")]
    pub type_label: String,
    pub choice: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyRow {
    pub player: usize,
    /// `file` or `derived`.
    pub source: String,
    pub choices: Vec<TypeChoice>,
    pub superrational: Option<bool>,
    pub violating_type: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlayRow {
    pub types: Vec<String>,
    pub choices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarsanyiResults {
    pub kind: String,
    pub mode: String,
    pub candidates: Vec<String>,
    pub justified_choices: Option<Vec<String>>,
    pub types: Vec<TypeRow>,
    pub strategies: Vec<StrategyRow>,
    pub play: Option<PlayRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentificationOut {
    pub blocks: Vec<Vec<String>>,
    pub rounds: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateRow {
    pub player: usize,
    pub choice: String,
    #[serde(rename = "type")]
    pub type_label: String,
    /// Test for players sharing one type label set; absent otherwise.
    pub same_types: Option<bool>,
    pub strict: bool,
    /// Present with `--weak`.
    pub weak: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutcomeRow {
    pub states: Vec<String>,
    pub choices: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BkResults {
    pub kind: String,
    pub mode: String,
    pub candidates: Vec<String>,
    pub justified_choices: Option<Vec<String>>,
    pub types: Vec<TypeRow>,
    pub identification: IdentificationOut,
    pub states: Vec<StateRow>,
    pub outcome: OutcomeRow,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        let mut head = format!("superrational {} {}", self.command.name, self.command.file);
        for o in &self.command.options {
            head.push(' ');
            head.push_str(o);
        }
        line(head);
        let c = &self.config;
        line(format!(
            "config: seed={} tolerance={:e} grid={} starts={}",
            c.seed, c.tolerance, c.grid, c.starts
        ));
        line(String::new());
        let body = match &self.results {
            Results::Analyze(r) => analyze_table(r),
            Results::Harsanyi(r) => harsanyi_table(r),
            Results::Bk(r) => bk_table(r),
        };
        out.push_str(&body);
        if !self.warnings.is_empty() {
            out.push_str("\nwarnings:\n");
            for w in &self.warnings {
                let _ = writeln!(out, "  - {w}");
            }
        }
        if !self.theorem_flags.is_empty() {
            out.push_str("\ntheorem flags:\n");
            for t in &self.theorem_flags {
                let _ = writeln!(
                    out,
                    "  {}: {} (premises {}, conclusion {})",
                    t.name,
                    on_off(t.flag),
                    yes_no(t.premises),
                    yes_no(t.conclusion)
                );
            }
        }
        out
    }
}

fn on_off(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Six decimals with trailing zeros removed; `-0` prints as `0`.
pub fn decimal(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

pub fn point(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|&v| decimal(v)).collect();
    format!("({})", parts.join(", "))
}

fn profile(p: &[String]) -> String {
    format!("({})", p.join(","))
}

fn profiles(ps: &[Profile]) -> String {
    if ps.is_empty() {
        return "none".into();
    }
    ps.iter().map(|p| profile(p)).collect::<Vec<_>>().join(" ")
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(" ")
    }
}

fn analyze_table(r: &AnalyzeResults) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "players: {}", r.players);
    for (i, a) in r.actions.iter().enumerate() {
        let _ = writeln!(out, "actions of player {}: {}", i + 1, a.join(" "));
    }
    let _ = writeln!(out, "symmetric: {}", yes_no(r.symmetric));
    if let Some(d) = &r.diagonal {
        let _ = writeln!(out, "diagonal: {}", profiles(d));
    }
    if let Some(j) = &r.sr_justifiable {
        let _ = writeln!(out, "superrationally justifiable: {}", list(j));
    }
    if let Some(s) = &r.superrational_profiles {
        let _ = writeln!(out, "superrational profiles: {}", profiles(s));
    }
    let _ = writeln!(out, "pure Nash equilibria: {}", profiles(&r.pure_nash));
    if let Some(m) = &r.mixed {
        let _ = writeln!(out, "\nmixed superrational strategies: {}", m.status);
        for (k, x) in m.maximizers.iter().enumerate() {
            let label = if m.status == "found" { "maximizer" } else { "best common point" };
            let _ = writeln!(
                out,
                "  {label} {}: {} value {} stationarity {:.1e}{}",
                k + 1,
                point(&x.strategy),
                decimal(x.value),
                x.stationarity,
                if x.converged { "" } else { " (not converged)" }
            );
        }
        if let Some(gap) = m.minimax_gap {
            let _ = writeln!(out, "  minimax gap: {}", decimal(gap));
        }
        out.push_str("  diagonal maxima per player:\n");
        for p in &m.per_player {
            let _ = write!(out, "    player {}: {} at {}", p.player, decimal(p.value), point(&p.maximizer));
            if let Some(min) = &p.interior_minimizer {
                let _ = write!(out, ", interior minimum {} at {}", decimal(min.value), point(&min.strategy));
            }
            out.push('\n');
        }
        let _ = writeln!(out, "  grid resolution: {}", m.grid_resolution);
    }
    if let Some(n) = &r.mixed_nash {
        let _ = writeln!(out, "\nmixed Nash equilibria{}:", if n.degenerate { " (degenerate game)" } else { "" });
        for eq in &n.equilibria {
            let parts: Vec<String> = eq.iter().map(|s| format!("({})", s.join(", "))).collect();
            let _ = writeln!(out, "  {}", parts.join(" "));
        }
    }
    out
}

fn space_header(out: &mut String, kind: &str, mode: &str, candidates: &[String], justified: &Option<Vec<String>>) {
    let _ = writeln!(out, "space: {kind}, {mode} choices");
    for (k, c) in candidates.iter().enumerate() {
        let _ = writeln!(out, "candidate {k}: ({c})");
    }
    if let Some(j) = justified {
        let _ = writeln!(out, "superrationally justifiable choices: {}", list(j));
    }
}

fn type_rows(out: &mut String, title: &str, rows: &[TypeRow]) {
    if rows.is_empty() {
        return;
    }
    let _ = writeln!(out, "\n{title}:");
    for t in rows {
        match (&t.choice, &t.reason) {
            (Some(c), _) if t.superrational => {
                let _ = writeln!(out, "  player {} type {}: superrational, plays {c}", t.player, t.type_label);
            }
            (_, Some(reason)) => {
                let _ = writeln!(out, "  player {} type {}: not superrational ({reason})", t.player, t.type_label);
            }
            _ => {
                let _ = writeln!(out, "  player {} type {}: not superrational", t.player, t.type_label);
            }
        }
    }
}

fn harsanyi_table(r: &HarsanyiResults) -> String {
    let mut out = String::new();
    space_header(&mut out, &r.kind, &r.mode, &r.candidates, &r.justified_choices);
    type_rows(&mut out, "types", &r.types);
    if !r.strategies.is_empty() {
        out.push_str("\nstrategies:\n");
        for s in &r.strategies {
            let map: Vec<String> = s.choices.iter().map(|c| format!("{}->{}", c.type_label, c.choice)).collect();
            let verdict = match (s.superrational, &s.violating_type) {
                (Some(true), _) => "superrational".to_string(),
                (Some(false), Some(t)) => format!("not superrational (type {t})"),
                (Some(false), None) => "not superrational".to_string(),
                (None, _) => "unchecked".to_string(),
            };
            let _ = writeln!(out, "  player {} ({}): {}; {verdict}", s.player, s.source, map.join(" "));
        }
    }
    if let Some(p) = &r.play {
        let _ = writeln!(out, "\nplay: types {} -> {}", profile(&p.types), profile(&p.choices));
    }
    out
}

fn bk_table(r: &BkResults) -> String {
    let mut out = String::new();
    space_header(&mut out, &r.kind, &r.mode, &r.candidates, &r.justified_choices);
    type_rows(&mut out, "types (shared label set)", &r.types);
    let blocks: Vec<String> = r
        .identification
        .blocks
        .iter()
        .map(|b| format!("{{{}}}", b.join(",")))
        .collect();
    let _ = writeln!(
        out,
        "\ngreatest identification relation: {} ({} refinement rounds)",
        blocks.join(","),
        r.identification.rounds
    );
    out.push_str("\nstates:\n");
    for s in &r.states {
        let mut verdicts = Vec::new();
        if let Some(v) = s.same_types {
            verdicts.push(format!("same-types {}", yes_no(v)));
        }
        verdicts.push(format!("strict {}", yes_no(s.strict)));
        if let Some(v) = s.weak {
            verdicts.push(format!("weak {}", yes_no(v)));
        }
        let _ = writeln!(
            out,
            "  player {} ({},{}): {}",
            s.player,
            s.choice,
            s.type_label,
            verdicts.join(", ")
        );
    }
    let _ = writeln!(
        out,
        "\noutcome: states {} -> {}",
        r.outcome.states.join(" "),
        profile(&r.outcome.choices)
    );
    out
}
