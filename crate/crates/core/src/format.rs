//! JSON game and type-space files.
//!
//! Players are numbered from 1 in every file. Rationals are strings such as
//! `"3"`, `"-10"` or `"1/2"`; bare JSON integers are accepted on input.
//!
//! A game file:
//!
//! ```json
//! {"players": 2, "actions": [["C","D"],["C","D"]],
//!  "payoffs": {"C,C": ["3","3"], "C,D": ["0","5"], "D,C": ["5","0"], "D,D": ["1","1"]}}
//! ```
//!
//! A type-space file names its `kind` (`harsanyi` or `bk`), its `mode`
//! (`pure` or `mixed`, with `candidates` such as `"1/3,2/3"` in mixed mode),
//! a `game` (inline, or a path relative to the file), the `types` of each
//! player and a `beliefs` map keyed `"player:type"`. A probabilistic belief
//! is a list of `{"prob", "actions", "types"}` entries whose maps are keyed
//! by opponent; a possibility belief is a list of tuples
//! `[[choice, type], ...]` in opponent order. In mixed mode a choice is a
//! 0-based candidate index written as a string.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bk_types::{BkSpace, PlayerState};
use crate::choice::ChoiceMode;
use crate::epistemic::{opponents, BayesianStrategy, BeliefTuple, FiniteDistribution, HarsanyiSpace, StrategyKind};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::mixed::MixedStrategy;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    fn parse(&self) -> Result<Rational> {
        match self {
            RationalText::Text(s) => parse_rational(s),
            RationalText::Int(v) => Ok(Rational::from_integer((*v).into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    pub players: usize,
    pub actions: Vec<Vec<String>>,
    pub payoffs: BTreeMap<String, Vec<RationalText>>,
}

impl GameFile {
    pub fn from_game(game: &Game) -> Self {
        let payoffs = game
            .profiles()
            .map(|p| {
                let key = p
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| game.actions(i)[a].as_str())
                    .collect::<Vec<_>>()
                    .join(",");
                let values = game
                    .payoff_vector(&p)
                    .iter()
                    .map(|q| RationalText::Text(format_rational(q)))
                    .collect();
                (key, values)
            })
            .collect();
        GameFile {
            players: game.players(),
            actions: game.action_lists().to_vec(),
            payoffs,
        }
    }

    pub fn to_game(&self) -> Result<Game> {
        if self.actions.len() != self.players {
            return Err(Error::Parse(format!(
                "\"players\" is {} but {} action lists are given",
                self.players,
                self.actions.len()
            )));
        }
        for (i, list) in self.actions.iter().enumerate() {
            if let Some(bad) = list.iter().find(|a| a.contains(',')) {
                return Err(Error::Parse(format!(
                    "action label {bad:?} of player {} contains a comma",
                    i + 1
                )));
            }
        }
        let counts: Vec<usize> = self.actions.iter().map(Vec::len).collect();
        if counts.contains(&0) {
            return Err(Error::Parse("every player needs at least one action".into()));
        }
        let mut payoffs = Vec::new();
        let mut used = 0;
        for p in crate::game::ProfileIter::new(&counts) {
            let key = p
                .iter()
                .enumerate()
                .map(|(i, &a)| self.actions[i][a].as_str())
                .collect::<Vec<_>>()
                .join(",");
            let values = self
                .payoffs
                .get(&key)
                .ok_or_else(|| Error::Parse(format!("payoff for profile \"{key}\" is missing")))?;
            if values.len() != self.players {
                return Err(Error::Parse(format!(
                    "payoff for profile \"{key}\" has {} entries, expected {}",
                    values.len(),
                    self.players
                )));
            }
            let parsed = values
                .iter()
                .map(|v| v.parse().map_err(|e| Error::Parse(format!("payoff for \"{key}\": {e}"))))
                .collect::<Result<Vec<_>>>()?;
            payoffs.push(parsed);
            used += 1;
        }
        if used != self.payoffs.len() {
            let extra = self
                .payoffs
                .keys()
                .find(|k| {
                    let labels: Vec<&str> = k.split(',').collect();
                    labels.len() != self.players
                        || labels
                            .iter()
                            .zip(&self.actions)
                            .any(|(l, acts)| !acts.iter().any(|a| a == l))
                })
                .cloned()
                .unwrap_or_default();
            return Err(Error::Parse(format!("payoff key \"{extra}\" is not a profile of the game")));
        }
        Game::new(self.actions.clone(), payoffs)
    }
}

pub fn parse_game(text: &str) -> Result<Game> {
    let file: GameFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_game()
}

pub fn game_to_json(game: &Game) -> String {
    serde_json::to_string_pretty(&GameFile::from_game(game)).expect("game files serialize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Harsanyi,
    Bk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    #[default]
    Pure,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GameSource {
    Inline(GameFile),
    Path(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbabilisticEntry {
    pub prob: RationalText,
    pub actions: BTreeMap<String, String>,
    pub types: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BeliefEntry {
    Probabilistic(ProbabilisticEntry),
    Possibility(Vec<(String, String)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeSpaceFile {
    pub kind: SpaceKind,
    #[serde(default)]
    pub mode: ModeName,
    pub game: GameSource,
    pub types: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<String>,
    pub beliefs: BTreeMap<String, Vec<BeliefEntry>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeSpace {
    Harsanyi(HarsanyiSpace),
    Bk(BkSpace),
}

impl TypeSpace {
    pub fn game(&self) -> &Game {
        match self {
            TypeSpace::Harsanyi(s) => s.game(),
            TypeSpace::Bk(s) => s.game(),
        }
    }

    pub fn mode(&self) -> &ChoiceMode {
        match self {
            TypeSpace::Harsanyi(s) => s.mode(),
            TypeSpace::Bk(s) => s.mode(),
        }
    }

    pub fn type_lists(&self) -> &[Vec<String>] {
        match self {
            TypeSpace::Harsanyi(s) => s.type_lists(),
            TypeSpace::Bk(s) => s.type_lists(),
        }
    }
}

/// Parses a comma-separated probability vector such as `"1/3,2/3"`.
pub fn parse_candidate(text: &str) -> Result<MixedStrategy> {
    let probs = text
        .split(',')
        .map(|p| parse_rational(p.trim()))
        .collect::<Result<Vec<_>>>()?;
    MixedStrategy::exact(probs).map_err(|e| Error::Parse(format!("candidate \"{text}\": {e}")))
}

pub fn format_candidate(s: &MixedStrategy) -> String {
    match s {
        MixedStrategy::Exact(p) => p.iter().map(format_rational).collect::<Vec<_>>().join(","),
        MixedStrategy::Float(p) => p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
    }
}

fn parse_player(text: &str, n: usize) -> Result<usize> {
    match text.trim().parse::<usize>() {
        Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
        _ => Err(Error::Parse(format!("\"{text}\" is not a player number between 1 and {n}"))),
    }
}

/// Splits a `"player:type"` key into a 0-based player and a type index.
fn parse_type_key(key: &str, types: &[Vec<String>]) -> Result<(usize, usize)> {
    let (p, label) = key
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("belief key \"{key}\" is not of the form player:type")))?;
    let player = parse_player(p, types.len())?;
    let t = types[player]
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Parse(format!("belief key \"{key}\": player {} has no type {label:?}", player + 1)))?;
    Ok((player, t))
}

fn type_of(types: &[Vec<String>], player: usize, label: &str, context: &str) -> Result<usize> {
    types[player]
        .iter()
        .position(|l| l == label)
        .ok_or_else(|| Error::Parse(format!("{context}: player {} has no type {label:?}", player + 1)))
}

fn choice_of(game: &Game, mode: &ChoiceMode, player: usize, label: &str, context: &str) -> Result<usize> {
    mode.parse_choice(game, player, label)
        .map_err(|e| Error::Parse(format!("{context}: {e}")))
}

impl TypeSpaceFile {
    /// Builds the space; a game given by path is read relative to `base`.
    pub fn to_space(&self, base: Option<&Path>) -> Result<TypeSpace> {
        let game = match &self.game {
            GameSource::Inline(g) => g.to_game()?,
            GameSource::Path(p) => {
                let path = base.map_or_else(|| Path::new(p).to_path_buf(), |b| b.join(p));
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("cannot read game file {}: {e}", path.display())))?;
                parse_game(&text)?
            }
        };
        let mode = match self.mode {
            ModeName::Pure => {
                if !self.candidates.is_empty() {
                    return Err(Error::Parse("\"candidates\" is only allowed in mixed mode".into()));
                }
                ChoiceMode::Pure
            }
            ModeName::Mixed => ChoiceMode::Mixed(
                self.candidates
                    .iter()
                    .map(|c| parse_candidate(c))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let n = game.players();
        let types = &self.types;
        if types.len() != n {
            return Err(Error::Parse(format!("{} type lists for {n} players", types.len())));
        }

        let mut slots: Vec<Vec<Option<&Vec<BeliefEntry>>>> = types.iter().map(|ts| vec![None; ts.len()]).collect();
        for (key, entries) in &self.beliefs {
            let (i, t) = parse_type_key(key, types)?;
            if slots[i][t].replace(entries).is_some() {
                return Err(Error::Parse(format!("duplicate beliefs for \"{key}\"")));
            }
        }
        let key_of = |i: usize, t: usize| format!("{}:{}", i + 1, types[i][t]);
        for (i, per_type) in slots.iter().enumerate() {
            if let Some(t) = per_type.iter().position(Option::is_none) {
                return Err(Error::Parse(format!("no beliefs given for \"{}\"", key_of(i, t))));
            }
        }

        match self.kind {
            SpaceKind::Harsanyi => {
                let mut beliefs = Vec::with_capacity(n);
                for (i, per_type) in slots.iter().enumerate() {
                    let mut list = Vec::with_capacity(per_type.len());
                    for (t, entries) in per_type.iter().enumerate() {
                        let key = key_of(i, t);
                        let mut dist = Vec::new();
                        for entry in entries.expect("checked above") {
                            let BeliefEntry::Probabilistic(e) = entry else {
                                return Err(Error::Parse(format!(
                                    "\"{key}\": probabilistic beliefs are objects with prob, actions and types"
                                )));
                            };
                            dist.push(self.probabilistic_tuple(&game, &mode, i, e, &key)?);
                        }
                        list.push(
                            FiniteDistribution::new(dist).map_err(|e| Error::Parse(format!("\"{key}\": {e}")))?,
                        );
                    }
                    beliefs.push(list);
                }
                Ok(TypeSpace::Harsanyi(HarsanyiSpace::new(game, mode, types.clone(), beliefs)?))
            }
            SpaceKind::Bk => {
                let mut beliefs = Vec::with_capacity(n);
                for (i, per_type) in slots.iter().enumerate() {
                    let mut list = Vec::with_capacity(per_type.len());
                    for (t, entries) in per_type.iter().enumerate() {
                        let key = key_of(i, t);
                        let entries = entries.expect("checked above");
                        if entries.is_empty() {
                            return Err(Error::Parse(format!("type \"{key}\" has an empty belief set")));
                        }
                        let mut set = Vec::new();
                        for entry in entries {
                            let BeliefEntry::Possibility(pairs) = entry else {
                                return Err(Error::Parse(format!(
                                    "\"{key}\": possibility beliefs are lists of [choice, type] pairs"
                                )));
                            };
                            if pairs.len() + 1 != n {
                                return Err(Error::Parse(format!(
                                    "\"{key}\": tuple has {} pairs, expected {}",
                                    pairs.len(),
                                    n - 1
                                )));
                            }
                            let tuple = opponents(n, i)
                                .zip(pairs)
                                .map(|(k, (c, ty))| {
                                    Ok((
                                        choice_of(&game, &mode, k, c, &key)?,
                                        type_of(types, k, ty, &key)?,
                                    ))
                                })
                                .collect::<Result<BeliefTuple>>()?;
                            set.push(tuple);
                        }
                        list.push(set);
                    }
                    beliefs.push(list);
                }
                Ok(TypeSpace::Bk(BkSpace::new(game, mode, types.clone(), beliefs)?))
            }
        }
    }

    fn probabilistic_tuple(
        &self,
        game: &Game,
        mode: &ChoiceMode,
        owner: usize,
        e: &ProbabilisticEntry,
        key: &str,
    ) -> Result<(BeliefTuple, Rational)> {
        let n = game.players();
        let prob = e.prob.parse().map_err(|err| Error::Parse(format!("\"{key}\": {err}")))?;
        for map in [&e.actions, &e.types] {
            for k in map.keys() {
                let p = parse_player(k, n)?;
                if p == owner {
                    return Err(Error::Parse(format!("\"{key}\": a belief cannot name its own player")));
                }
            }
            if map.len() + 1 != n {
                return Err(Error::Parse(format!(
                    "\"{key}\": every opponent needs a choice and a type"
                )));
            }
        }
        let lookup = |map: &BTreeMap<String, String>, k: usize| -> Result<String> {
            map.iter()
                .find(|(p, _)| p.trim().parse::<usize>().ok() == Some(k + 1))
                .map(|(_, v)| v.clone())
                .ok_or_else(|| Error::Parse(format!("\"{key}\": opponent {} is missing", k + 1)))
        };
        let tuple = opponents(n, owner)
            .map(|k| {
                Ok((
                    choice_of(game, mode, k, &lookup(&e.actions, k)?, key)?,
                    type_of(&self.types, k, &lookup(&e.types, k)?, key)?,
                ))
            })
            .collect::<Result<BeliefTuple>>()?;
        Ok((tuple, prob))
    }

    pub fn from_space(space: &TypeSpace) -> Self {
        let game = space.game();
        let mode = space.mode();
        let types = space.type_lists();
        let n = game.players();
        let pair_labels = |owner: usize, tuple: &BeliefTuple| -> Vec<(usize, String, String)> {
            opponents(n, owner)
                .zip(tuple)
                .map(|(k, &(c, t))| (k, mode.choice_label(game, k, c), types[k][t].clone()))
                .collect()
        };
        let mut beliefs = BTreeMap::new();
        for (i, ts) in types.iter().enumerate() {
            for (t, label) in ts.iter().enumerate() {
                let entries = match space {
                    TypeSpace::Harsanyi(s) => s
                        .belief(i, t)
                        .entries()
                        .iter()
                        .map(|(tuple, p)| {
                            let pairs = pair_labels(i, tuple);
                            BeliefEntry::Probabilistic(ProbabilisticEntry {
                                prob: RationalText::Text(format_rational(p)),
                                actions: pairs.iter().map(|(k, c, _)| ((k + 1).to_string(), c.clone())).collect(),
                                types: pairs.iter().map(|(k, _, ty)| ((k + 1).to_string(), ty.clone())).collect(),
                            })
                        })
                        .collect(),
                    TypeSpace::Bk(s) => s
                        .belief(i, t)
                        .iter()
                        .map(|tuple| {
                            BeliefEntry::Possibility(
                                pair_labels(i, tuple).into_iter().map(|(_, c, ty)| (c, ty)).collect(),
                            )
                        })
                        .collect(),
                };
                beliefs.insert(format!("{}:{label}", i + 1), entries);
            }
        }
        TypeSpaceFile {
            kind: match space {
                TypeSpace::Harsanyi(_) => SpaceKind::Harsanyi,
                TypeSpace::Bk(_) => SpaceKind::Bk,
            },
            mode: if mode.is_mixed() { ModeName::Mixed } else { ModeName::Pure },
            game: GameSource::Inline(GameFile::from_game(game)),
            types: types.to_vec(),
            candidates: mode.candidates().iter().map(format_candidate).collect(),
            beliefs,
        }
    }
}

pub fn parse_type_space(text: &str, base: Option<&Path>) -> Result<TypeSpace> {
    let file: TypeSpaceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_space(base)
}

pub fn type_space_to_json(space: &TypeSpace) -> String {
    serde_json::to_string_pretty(&TypeSpaceFile::from_space(space)).expect("type-space files serialize")
}

/// Bayesian strategies file: `{"1": {"t": "C"}, "2": {"t": "C"}}`, one map
/// from type label to choice per player. Every type must be covered.
pub fn parse_strategies(text: &str, space: &HarsanyiSpace) -> Result<Vec<BayesianStrategy>> {
    let file: BTreeMap<String, BTreeMap<String, String>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let game = space.game();
    let n = game.players();
    let mut per_player: Vec<Option<&BTreeMap<String, String>>> = vec![None; n];
    for (p, map) in &file {
        let i = parse_player(p, n)?;
        per_player[i] = Some(map);
    }
    let kind = if space.mode().is_mixed() {
        StrategyKind::Candidates
    } else {
        StrategyKind::Actions
    };
    per_player
        .into_iter()
        .enumerate()
        .map(|(i, map)| {
            let map = map.ok_or_else(|| Error::Parse(format!("no strategy for player {}", i + 1)))?;
            for label in map.keys() {
                type_of(space.type_lists(), i, label, "strategy")?;
            }
            let choices = space
                .types(i)
                .iter()
                .map(|t| {
                    let c = map
                        .get(t)
                        .ok_or_else(|| Error::Parse(format!("strategy of player {} misses type {t:?}", i + 1)))?;
                    choice_of(game, space.mode(), i, c, "strategy")
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(BayesianStrategy { player: i, kind, choices })
        })
        .collect()
}

/// Comma-separated type labels, one per player, e.g. `"t,t"`.
pub fn parse_type_profile(text: &str, types: &[Vec<String>]) -> Result<Vec<usize>> {
    let labels: Vec<&str> = text.split(',').map(str::trim).collect();
    if labels.len() != types.len() {
        return Err(Error::Parse(format!("{} types given for {} players", labels.len(), types.len())));
    }
    labels
        .iter()
        .enumerate()
        .map(|(i, l)| type_of(types, i, l, "type profile"))
        .collect()
}

/// Comma-separated `choice:type` states, one per player, e.g. `"C:r,C:u"`.
pub fn parse_states(text: &str, space: &BkSpace) -> Result<Vec<PlayerState>> {
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    if items.len() != space.players() {
        return Err(Error::Parse(format!(
            "{} states given for {} players",
            items.len(),
            space.players()
        )));
    }
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let (c, t) = item
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("state \"{item}\" is not of the form choice:type")))?;
            Ok(PlayerState {
                choice: choice_of(space.game(), space.mode(), i, c, "state")?,
                type_index: type_of(space.type_lists(), i, t, "state")?,
            })
        })
        .collect()
}
