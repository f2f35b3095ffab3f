//! Finite probabilistic type spaces.
//!
//! Each type `t ∈ T_i` carries a belief `f_i(t)`: a finitely supported
//! distribution over opponent tuples, one `(choice, type)` pair per opponent
//! in ascending player order. The checks here decide whether a type is
//! superrational (certain that every opponent shares its type and plays one
//! common justifiable choice), whether a bayesian strategy follows those
//! certainties, what profile a type profile produces, and whether the
//! knowledge-of-actions conditions for a pure Nash equilibrium hold.

use num_traits::{One, Zero};

use crate::choice::{exact_candidate, ChoiceMode, Justification};
use crate::error::{Error, Result};
use crate::game::{sr_justifiable_actions, ActionProfile, Game};
use crate::mixed::{superrational_mixed, OptimizerConfig};
use crate::rational::{is_nonnegative, Rational};

/// `(choice, type)` for each opponent, ascending player order.
pub type BeliefTuple = Vec<(usize, usize)>;

/// Finitely supported probability distribution with exact weights.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution<T> {
    entries: Vec<(T, Rational)>,
}

impl<T: Clone + PartialEq> FiniteDistribution<T> {
    pub fn new(entries: Vec<(T, Rational)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        for (k, (x, p)) in entries.iter().enumerate() {
            if !is_nonnegative(p) {
                return Err(Error::InvalidDistribution(format!("negative probability {p}")));
            }
            if entries[..k].iter().any(|(y, _)| y == x) {
                return Err(Error::InvalidDistribution("repeated support entry".into()));
            }
        }
        let total: Rational = entries.iter().map(|(_, p)| p).sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(FiniteDistribution { entries })
    }

    pub fn dirac(x: T) -> Self {
        FiniteDistribution {
            entries: vec![(x, Rational::one())],
        }
    }

    pub fn entries(&self) -> &[(T, Rational)] {
        &self.entries
    }

    pub fn total_mass(&self) -> Rational {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    pub fn prob(&self, x: &T) -> Rational {
        self.entries
            .iter()
            .find(|(y, _)| y == x)
            .map_or_else(Rational::zero, |(_, p)| p.clone())
    }

    /// Image measure along `f`; weights of outcomes with equal images add.
    pub fn pushforward<U: Clone + PartialEq, F: Fn(&T) -> U>(&self, f: F) -> FiniteDistribution<U> {
        let mut out: Vec<(U, Rational)> = Vec::new();
        for (x, p) in &self.entries {
            let y = f(x);
            match out.iter_mut().find(|(z, _)| *z == y) {
                Some((_, q)) => *q += p,
                None => out.push((y, p.clone())),
            }
        }
        FiniteDistribution { entries: out }
    }

    /// The outcome carrying all the mass, ignoring zero-weight entries.
    pub fn as_dirac(&self) -> Option<&T> {
        let mut positive = self.entries.iter().filter(|(_, p)| !p.is_zero());
        match (positive.next(), positive.next()) {
            (Some((x, p)), None) if p.is_one() => Some(x),
            _ => None,
        }
    }
}

/// Which half of an opponent's `(choice, type)` pair to project onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    Choice,
    Type,
}

/// Marginal of a belief on the opponent at tuple position `position`.
pub fn marginal(
    d: &FiniteDistribution<BeliefTuple>,
    position: usize,
    kind: Coordinate,
) -> Result<FiniteDistribution<usize>> {
    if let Some((tuple, _)) = d.entries().iter().find(|(t, _)| t.len() <= position) {
        return Err(Error::BadCoordinate {
            coordinate: position,
            len: tuple.len(),
        });
    }
    Ok(d.pushforward(|t| match kind {
        Coordinate::Choice => t[position].0,
        Coordinate::Type => t[position].1,
    }))
}

/// Position of player `other` inside a tuple held by `owner`.
pub(crate) fn tuple_position(owner: usize, other: usize) -> usize {
    if other < owner {
        other
    } else {
        other - 1
    }
}

pub(crate) fn opponents(n: usize, owner: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&k| k != owner)
}

pub(crate) fn common_type_labels(types: &[Vec<String>]) -> bool {
    let sorted: Vec<Vec<&String>> = types
        .iter()
        .map(|t| {
            let mut v: Vec<&String> = t.iter().collect();
            v.sort();
            v
        })
        .collect();
    sorted.windows(2).all(|w| w[0] == w[1])
}

pub(crate) fn validate_types(game: &Game, types: &[Vec<String>]) -> Result<()> {
    if types.len() != game.players() {
        return Err(Error::InvalidSpace(format!(
            "{} type lists for {} players",
            types.len(),
            game.players()
        )));
    }
    for (i, list) in types.iter().enumerate() {
        if list.is_empty() {
            return Err(Error::InvalidSpace(format!("player {} has no types", i + 1)));
        }
        for (k, t) in list.iter().enumerate() {
            if list[..k].contains(t) {
                return Err(Error::InvalidSpace(format!(
                    "duplicate type {t:?} for player {}",
                    i + 1
                )));
            }
        }
    }
    Ok(())
}

pub(crate) fn validate_tuple(
    game: &Game,
    mode: &ChoiceMode,
    types: &[Vec<String>],
    owner: usize,
    tuple: &BeliefTuple,
) -> Result<()> {
    let n = game.players();
    if tuple.len() + 1 != n {
        return Err(Error::InvalidSpace(format!(
            "belief tuple of player {} has {} entries, expected {}",
            owner + 1,
            tuple.len(),
            n - 1
        )));
    }
    for (pos, k) in opponents(n, owner).enumerate() {
        let (c, t) = tuple[pos];
        if c >= mode.choice_count(game, k) || t >= types[k].len() {
            return Err(Error::InvalidSpace(format!(
                "belief tuple of player {} refers to an invalid choice or type of player {}",
                owner + 1,
                k + 1
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarsanyiSpace {
    game: Game,
    mode: ChoiceMode,
    types: Vec<Vec<String>>,
    beliefs: Vec<Vec<FiniteDistribution<BeliefTuple>>>,
}

impl HarsanyiSpace {
    pub fn new(
        game: Game,
        mode: ChoiceMode,
        types: Vec<Vec<String>>,
        beliefs: Vec<Vec<FiniteDistribution<BeliefTuple>>>,
    ) -> Result<Self> {
        mode.validate(&game)?;
        validate_types(&game, &types)?;
        if beliefs.len() != game.players() {
            return Err(Error::InvalidSpace("one belief list per player is required".into()));
        }
        for (i, per_type) in beliefs.iter().enumerate() {
            if per_type.len() != types[i].len() {
                return Err(Error::InvalidSpace(format!(
                    "player {} has {} types but {} beliefs",
                    i + 1,
                    types[i].len(),
                    per_type.len()
                )));
            }
            for d in per_type {
                for (tuple, _) in d.entries() {
                    validate_tuple(&game, &mode, &types, i, tuple)?;
                }
            }
        }
        Ok(HarsanyiSpace {
            game,
            mode,
            types,
            beliefs,
        })
    }

    pub fn game(&self) -> &Game {
        &self.game
    }

    pub fn mode(&self) -> &ChoiceMode {
        &self.mode
    }

    pub fn types(&self, player: usize) -> &[String] {
        &self.types[player]
    }

    pub fn type_lists(&self) -> &[Vec<String>] {
        &self.types
    }

    pub fn belief(&self, player: usize, t: usize) -> &FiniteDistribution<BeliefTuple> {
        &self.beliefs[player][t]
    }

    pub fn type_index(&self, player: usize, label: &str) -> Result<usize> {
        self.types
            .get(player)
            .and_then(|ts| ts.iter().position(|t| t == label))
            .ok_or_else(|| Error::UnknownType {
                player,
                label: label.to_string(),
            })
    }

    pub fn has_common_type_sets(&self) -> bool {
        common_type_labels(&self.types)
    }

    fn check_type(&self, player: usize, t: usize) -> Result<()> {
        if player >= self.game.players() || t >= self.types[player].len() {
            return Err(Error::UnknownType {
                player,
                label: t.to_string(),
            });
        }
        Ok(())
    }

    /// Marginal of `f_player(t)` on opponent `opponent` (a player index).
    pub fn belief_marginal(
        &self,
        player: usize,
        t: usize,
        opponent: usize,
        kind: Coordinate,
    ) -> Result<FiniteDistribution<usize>> {
        self.check_type(player, t)?;
        if opponent == player || opponent >= self.game.players() {
            return Err(Error::BadCoordinate {
                coordinate: opponent,
                len: self.game.players() - 1,
            });
        }
        marginal(self.belief(player, t), tuple_position(player, opponent), kind)
    }
}

/// Which kind of choice a bayesian strategy returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyKind {
    Actions,
    Candidates,
}

/// A map from a player's types to choices (`choices[t]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BayesianStrategy {
    pub player: usize,
    pub kind: StrategyKind,
    pub choices: Vec<usize>,
}

impl BayesianStrategy {
    pub fn constant(player: usize, kind: StrategyKind, types: usize, choice: usize) -> Self {
        BayesianStrategy {
            player,
            kind,
            choices: vec![choice; types],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotSuperrational {
    TypeBeliefNotDirac { opponent: usize },
    BelievesOtherType { opponent: usize, believed: String },
    ChoiceBeliefNotDirac { opponent: usize },
    ChoicesDisagree,
    NotJustified { choice: usize },
    NoJustifiedChoice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeVerdict {
    /// Carries the choice the type is certain of, as an index for the
    /// type's own player.
    Superrational { choice: usize },
    NotSuperrational(NotSuperrational),
}

impl TypeVerdict {
    pub fn choice(&self) -> Option<usize> {
        match self {
            TypeVerdict::Superrational { choice } => Some(*choice),
            TypeVerdict::NotSuperrational(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyVerdict {
    pub superrational: bool,
    pub violating_type: Option<usize>,
}

/// Premises and conclusion of the "superrational types lead to the
/// superrational profile" result, evaluated on a concrete instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremCheck {
    pub premises: bool,
    pub conclusion: bool,
}

impl TheoremCheck {
    /// On iff the premises hold and the outcome is the superrational profile.
    pub fn flag(&self) -> bool {
        self.premises && self.conclusion
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayOutcome {
    /// One choice per player (action or candidate index).
    pub choices: Vec<usize>,
    pub theorem: TheoremCheck,
}

/// Checks over a [`HarsanyiSpace`], sharing one justification computation.
#[derive(Debug, Clone)]
pub struct HarsanyiChecker<'a> {
    space: &'a HarsanyiSpace,
    justification: Result<Justification>,
}

impl<'a> HarsanyiChecker<'a> {
    pub fn new(space: &'a HarsanyiSpace, cfg: &OptimizerConfig) -> Self {
        let justification = Justification::new(&space.game, &space.mode, cfg);
        HarsanyiChecker {
            space,
            justification,
        }
    }

    pub fn space(&self) -> &HarsanyiSpace {
        self.space
    }

    pub fn justification(&self) -> Result<&Justification> {
        self.justification.as_ref().map_err(Clone::clone)
    }

    /// Pure-mode superrational type test.
    pub fn is_superrational_type(&self, player: usize, t: usize) -> Result<TypeVerdict> {
        if self.space.mode.is_mixed() {
            return Err(Error::ModeMismatch("space holds mixed-strategy beliefs".into()));
        }
        self.type_verdict(player, t)
    }

    /// Mixed-mode superrational type test: certainty of one candidate whose
    /// diagonal payoff reaches the superrational optimum.
    pub fn is_superrational_type_mixed(&self, player: usize, t: usize) -> Result<TypeVerdict> {
        if !self.space.mode.is_mixed() {
            return Err(Error::ModeMismatch("space holds pure-action beliefs".into()));
        }
        self.type_verdict(player, t)
    }

    /// Whichever of the two type tests matches the space's mode.
    pub fn type_verdict(&self, player: usize, t: usize) -> Result<TypeVerdict> {
        let space = self.space;
        space.check_type(player, t)?;
        if !space.has_common_type_sets() {
            return Err(Error::TypeSetsDiffer);
        }
        let justification = self.justification()?;
        let label = &space.types[player][t];
        let n = space.game.players();
        let mut common: Option<(usize, usize)> = None;
        for j in opponents(n, player) {
            let types = space.belief_marginal(player, t, j, Coordinate::Type)?;
            let Some(&believed) = types.as_dirac() else {
                return Ok(TypeVerdict::NotSuperrational(NotSuperrational::TypeBeliefNotDirac {
                    opponent: j,
                }));
            };
            if &space.types[j][believed] != label {
                return Ok(TypeVerdict::NotSuperrational(NotSuperrational::BelievesOtherType {
                    opponent: j,
                    believed: space.types[j][believed].clone(),
                }));
            }
        }
        for j in opponents(n, player) {
            let choices = space.belief_marginal(player, t, j, Coordinate::Choice)?;
            let Some(&c) = choices.as_dirac() else {
                return Ok(TypeVerdict::NotSuperrational(NotSuperrational::ChoiceBeliefNotDirac {
                    opponent: j,
                }));
            };
            match common {
                None => common = Some((j, c)),
                Some((j0, c0)) => {
                    if !space.mode.same_choice(&space.game, j0, c0, j, c) {
                        return Ok(TypeVerdict::NotSuperrational(NotSuperrational::ChoicesDisagree));
                    }
                }
            }
        }
        let choice = match common {
            // common action lists (or shared candidates): the index carries over
            Some((_, c)) => c,
            None => match justification.first_justified() {
                Some(c) => c,
                None => return Ok(TypeVerdict::NotSuperrational(NotSuperrational::NoJustifiedChoice)),
            },
        };
        if !justification.is_justified(choice) {
            return Ok(TypeVerdict::NotSuperrational(NotSuperrational::NotJustified { choice }));
        }
        Ok(TypeVerdict::Superrational { choice })
    }

    fn check_strategy(&self, b: &BayesianStrategy) -> Result<()> {
        let expected = if self.space.mode.is_mixed() {
            StrategyKind::Candidates
        } else {
            StrategyKind::Actions
        };
        if b.kind != expected {
            return Err(Error::ModeMismatch(format!(
                "strategy returns {:?} but the space is in {} mode",
                b.kind,
                self.space.mode.name()
            )));
        }
        if b.player >= self.space.game.players() {
            return Err(Error::InvalidSpace(format!("no player {}", b.player + 1)));
        }
        let count = self.space.mode.choice_count(&self.space.game, b.player);
        if b.choices.len() != self.space.types[b.player].len() || b.choices.iter().any(|&c| c >= count) {
            return Err(Error::InvalidSpace(format!(
                "strategy of player {} is not a total map into its choices",
                b.player + 1
            )));
        }
        Ok(())
    }

    /// Every superrational type is mapped to the choice it is certain of.
    pub fn is_superrational_bayesian_strategy(&self, b: &BayesianStrategy) -> Result<StrategyVerdict> {
        self.check_strategy(b)?;
        for t in 0..self.space.types[b.player].len() {
            if let TypeVerdict::Superrational { choice } = self.type_verdict(b.player, t)? {
                if !self
                    .space
                    .mode
                    .same_choice(&self.space.game, b.player, b.choices[t], b.player, choice)
                {
                    return Ok(StrategyVerdict {
                        superrational: false,
                        violating_type: Some(t),
                    });
                }
            }
        }
        Ok(StrategyVerdict {
            superrational: true,
            violating_type: None,
        })
    }

    /// The strategy sending superrational types to their certified choice
    /// and every other type to choice 0.
    pub fn superrational_strategy(&self, player: usize) -> Result<BayesianStrategy> {
        let kind = if self.space.mode.is_mixed() {
            StrategyKind::Candidates
        } else {
            StrategyKind::Actions
        };
        let choices = (0..self.space.types[player].len())
            .map(|t| Ok(self.type_verdict(player, t)?.choice().unwrap_or(0)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BayesianStrategy {
            player,
            kind,
            choices,
        })
    }

    fn check_profile(&self, types: &[usize], strategies: &[BayesianStrategy]) -> Result<()> {
        let n = self.space.game.players();
        if types.len() != n || strategies.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "need one type and one strategy for each of {n} players"
            )));
        }
        for (i, (&t, b)) in types.iter().zip(strategies).enumerate() {
            self.space.check_type(i, t)?;
            if b.player != i {
                return Err(Error::InvalidSpace(format!(
                    "strategy {} belongs to player {}",
                    i + 1,
                    b.player + 1
                )));
            }
            self.check_strategy(b)?;
        }
        Ok(())
    }

    /// Applies each strategy to its player's type and evaluates the theorem
    /// premises on the way.
    pub fn play(&self, types: &[usize], strategies: &[BayesianStrategy]) -> Result<PlayOutcome> {
        self.check_profile(types, strategies)?;
        let choices: Vec<usize> = types
            .iter()
            .zip(strategies)
            .map(|(&t, b)| b.choices[t])
            .collect();
        let premises = self.premises(types, strategies);
        let conclusion = match self.justification() {
            Ok(j) => choices.iter().all(|&c| j.is_unique_choice(c)),
            Err(_) => false,
        };
        Ok(PlayOutcome {
            choices,
            theorem: TheoremCheck {
                premises,
                conclusion,
            },
        })
    }

    fn premises(&self, types: &[usize], strategies: &[BayesianStrategy]) -> bool {
        let Ok(j) = self.justification() else {
            return false;
        };
        if j.unique().is_none() {
            return false;
        }
        types.iter().enumerate().all(|(i, &t)| {
            matches!(self.type_verdict(i, t), Ok(TypeVerdict::Superrational { .. }))
        }) && strategies.iter().all(|b| {
            matches!(
                self.is_superrational_bayesian_strategy(b),
                Ok(StrategyVerdict {
                    superrational: true,
                    ..
                })
            )
        })
    }

    /// Knowledge-of-actions conditions for `target`: every player is certain
    /// of the opponents' target actions, her strategy picks her target
    /// action, and that action is a best response.
    pub fn nash_epistemic_check(
        &self,
        types: &[usize],
        strategies: &[BayesianStrategy],
        target: &ActionProfile,
    ) -> Result<bool> {
        if self.space.mode.is_mixed() {
            return Err(Error::ModeMismatch("requires pure-action beliefs".into()));
        }
        self.check_profile(types, strategies)?;
        let game = &self.space.game;
        let n = game.players();
        if target.0.len() != n {
            return Err(Error::DimensionMismatch("target profile length".into()));
        }
        for i in 0..n {
            let t = types[i];
            for j in opponents(n, i) {
                let m = self.space.belief_marginal(i, t, j, Coordinate::Choice)?;
                if m.as_dirac() != Some(&target.0[j]) {
                    return Ok(false);
                }
            }
            if strategies[i].choices[t] != target.0[i] {
                return Ok(false);
            }
            let current = game.payoff(&target.0, i);
            let mut deviation = target.0.clone();
            for alt in 0..game.actions(i).len() {
                deviation[i] = alt;
                if game.payoff(&deviation, i) > current {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// One type `"t"` per player, each certain that every opponent is of type
/// `t` and plays the first superrationally justifiable action.
pub fn make_superrational_space(game: &Game) -> Result<HarsanyiSpace> {
    let a = *sr_justifiable_actions(game)?
        .first()
        .ok_or(Error::NoJustifiableAction)?;
    let n = game.players();
    let types = vec![vec!["t".to_string()]; n];
    let beliefs = (0..n)
        .map(|_| vec![FiniteDistribution::dirac(vec![(a, 0); n - 1])])
        .collect();
    HarsanyiSpace::new(game.clone(), ChoiceMode::Pure, types, beliefs)
}

/// Mixed-mode analogue: the single candidate is the optimizer's best
/// superrational mixed strategy.
pub fn make_superrational_space_mixed(game: &Game, cfg: &OptimizerConfig) -> Result<HarsanyiSpace> {
    let report = superrational_mixed(game, cfg)?;
    let best = report.maximizers.first().ok_or(Error::NoJustifiableAction)?;
    let n = game.players();
    let mode = ChoiceMode::Mixed(vec![exact_candidate(&best.strategy)]);
    let types = vec![vec!["t".to_string()]; n];
    let beliefs = (0..n)
        .map(|_| vec![FiniteDistribution::dirac(vec![(0, 0); n - 1])])
        .collect();
    HarsanyiSpace::new(game.clone(), mode, types, beliefs)
}
