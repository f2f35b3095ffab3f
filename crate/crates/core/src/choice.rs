//! What the "action" coordinate of a belief refers to, and which of those
//! choices are superrationally justifiable.
//!
//! In pure mode a choice is an action index. In mixed mode it is an index
//! into a declared list of candidate mixed strategies over the common
//! action list; a candidate is justifiable when its diagonal expected
//! payoff reaches every player's diagonal maximum within the optimizer
//! tolerance.

use crate::error::{Error, Result};
use crate::game::{sr_justifiable_actions, Game};
use crate::mixed::{superrational_mixed, DiagonalPolynomial, MixedStrategy, OptimizerConfig, SrMixedReport};
use crate::rational::{approximate, Rational};

/// Candidates within this max-norm distance of the unique optimum count as
/// that optimum.
pub const CANDIDATE_MATCH_DISTANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum ChoiceMode {
    Pure,
    Mixed(Vec<MixedStrategy>),
}

impl ChoiceMode {
    pub fn is_mixed(&self) -> bool {
        matches!(self, ChoiceMode::Mixed(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            ChoiceMode::Pure => "pure",
            ChoiceMode::Mixed(_) => "mixed",
        }
    }

    pub fn candidates(&self) -> &[MixedStrategy] {
        match self {
            ChoiceMode::Pure => &[],
            ChoiceMode::Mixed(c) => c,
        }
    }

    pub fn choice_count(&self, game: &Game, player: usize) -> usize {
        match self {
            ChoiceMode::Pure => game.actions(player).len(),
            ChoiceMode::Mixed(c) => c.len(),
        }
    }

    /// Action label in pure mode, candidate index in mixed mode.
    pub fn choice_label(&self, game: &Game, player: usize, choice: usize) -> String {
        match self {
            ChoiceMode::Pure => game.actions(player)[choice].clone(),
            ChoiceMode::Mixed(_) => choice.to_string(),
        }
    }

    pub fn parse_choice(&self, game: &Game, player: usize, label: &str) -> Result<usize> {
        let found = match self {
            ChoiceMode::Pure => game.action_index(player, label),
            ChoiceMode::Mixed(c) => label.parse::<usize>().ok().filter(|&k| k < c.len()),
        };
        found.ok_or_else(|| {
            Error::InvalidSpace(format!(
                "{label:?} is not a valid {} choice for player {}",
                self.name(),
                player + 1
            ))
        })
    }

    /// Whether choice `a` of `player_a` and choice `b` of `player_b` denote
    /// the same thing (equal labels, or equal candidate strategies).
    pub fn same_choice(&self, game: &Game, player_a: usize, a: usize, player_b: usize, b: usize) -> bool {
        match self {
            ChoiceMode::Pure => game.actions(player_a)[a] == game.actions(player_b)[b],
            ChoiceMode::Mixed(c) => a == b || c[a] == c[b],
        }
    }

    /// Validates candidate dimensions against the game's common action list.
    pub fn validate(&self, game: &Game) -> Result<()> {
        if let ChoiceMode::Mixed(c) = self {
            game.require_common_actions()?;
            let m = game.actions(0).len();
            if c.is_empty() {
                return Err(Error::InvalidSpace("mixed mode needs at least one candidate".into()));
            }
            if let Some(k) = c.iter().position(|s| s.len() != m) {
                return Err(Error::InvalidSpace(format!(
                    "candidate {k} has {} entries, game has {m} actions",
                    c[k].len()
                )));
            }
        }
        Ok(())
    }
}

/// The unique superrational choice, when there is exactly one.
#[derive(Debug, Clone, PartialEq)]
pub enum UniqueChoice {
    Action(usize),
    Strategy(Vec<f64>),
}

#[derive(Debug, Clone)]
pub struct Justification {
    justified: Vec<bool>,
    unique: Option<UniqueChoice>,
    candidates: Vec<Vec<f64>>,
    report: Option<SrMixedReport>,
}

impl Justification {
    pub fn new(game: &Game, mode: &ChoiceMode, cfg: &OptimizerConfig) -> Result<Self> {
        match mode {
            ChoiceMode::Pure => Self::pure(game),
            ChoiceMode::Mixed(c) => Self::mixed(game, c, cfg),
        }
    }

    pub fn pure(game: &Game) -> Result<Self> {
        let actions = sr_justifiable_actions(game)?;
        let mut justified = vec![false; game.actions(0).len()];
        for &a in &actions {
            justified[a] = true;
        }
        let unique = match actions.as_slice() {
            [only] => Some(UniqueChoice::Action(*only)),
            _ => None,
        };
        Ok(Justification {
            justified,
            unique,
            candidates: Vec::new(),
            report: None,
        })
    }

    pub fn mixed(game: &Game, candidates: &[MixedStrategy], cfg: &OptimizerConfig) -> Result<Self> {
        let report = superrational_mixed(game, cfg)?;
        let poly = DiagonalPolynomial::new(game)?;
        let candidates: Vec<Vec<f64>> = candidates.iter().map(MixedStrategy::to_f64).collect();
        let justified = candidates
            .iter()
            .map(|s| report.justifies(&poly, s, cfg.tolerance))
            .collect();
        let unique = report
            .unique_maximizer()
            .map(|m| UniqueChoice::Strategy(m.strategy.clone()));
        Ok(Justification {
            justified,
            unique,
            candidates,
            report: Some(report),
        })
    }

    pub fn is_justified(&self, choice: usize) -> bool {
        self.justified.get(choice).copied().unwrap_or(false)
    }

    pub fn first_justified(&self) -> Option<usize> {
        self.justified.iter().position(|&j| j)
    }

    pub fn unique(&self) -> Option<&UniqueChoice> {
        self.unique.as_ref()
    }

    /// Whether `choice` is the unique superrational choice.
    pub fn is_unique_choice(&self, choice: usize) -> bool {
        match &self.unique {
            Some(UniqueChoice::Action(a)) => *a == choice,
            Some(UniqueChoice::Strategy(s)) => self.candidates.get(choice).is_some_and(|c| {
                c.iter()
                    .zip(s)
                    .all(|(x, y)| (x - y).abs() <= CANDIDATE_MATCH_DISTANCE)
            }),
            None => false,
        }
    }

    pub fn mixed_report(&self) -> Option<&SrMixedReport> {
        self.report.as_ref()
    }
}

/// Exact candidate close to a floating strategy: each coordinate is
/// approximated with bounded denominator and the last one absorbs the
/// rounding so the vector sums to one.
pub fn exact_candidate(strategy: &[f64]) -> MixedStrategy {
    let mut probs: Vec<Rational> = strategy.iter().map(|&p| approximate(p, 1_000_000)).collect();
    let head: Rational = probs[..probs.len() - 1].iter().sum();
    let last = probs.len() - 1;
    probs[last] = Rational::from_integer(1.into()) - head;
    match MixedStrategy::exact(probs) {
        Ok(s) => s,
        // rounding pushed the last entry negative; fall back to the pure vertex
        Err(_) => {
            let best = strategy
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .map_or(0, |(k, _)| k);
            MixedStrategy::pure(strategy.len(), best)
        }
    }
}
