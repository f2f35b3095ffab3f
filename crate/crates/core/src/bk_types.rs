//! Finite possibility structures: each type believes a finite nonempty set
//! of opponent `(choice, type)` tuples instead of a probability measure.
//!
//! Besides the same-type-set notion of a superrational state, this module
//! relates types of different players through identification relations: an
//! equivalence on the disjoint union of the type sets under which related
//! types hold the same beliefs up to a relabelling of the players. The
//! coarsest such relation is found by partition refinement.

use std::fmt;

use crate::choice::{exact_candidate, ChoiceMode, Justification};
use crate::epistemic::{
    common_type_labels, opponents, tuple_position, validate_tuple, validate_types, BeliefTuple,
    TheoremCheck,
};
use crate::error::{Error, Result};
use crate::game::{is_symmetric, sr_justifiable_actions, Game, Permutation};
use crate::mixed::{superrational_mixed, OptimizerConfig};

/// Type `index` of player `player`; the tag keeps equally named types of
/// different players apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeRef {
    pub player: usize,
    pub index: usize,
}

impl TypeRef {
    pub fn new(player: usize, index: usize) -> Self {
        TypeRef { player, index }
    }
}

/// A player's state: the choice she makes and her type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlayerState {
    pub choice: usize,
    pub type_index: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BkSpace {
    game: Game,
    mode: ChoiceMode,
    types: Vec<Vec<String>>,
    beliefs: Vec<Vec<Vec<BeliefTuple>>>,
}

impl BkSpace {
    /// Belief sets are sorted and deduplicated; an empty one is an error
    /// naming the type.
    pub fn new(
        game: Game,
        mode: ChoiceMode,
        types: Vec<Vec<String>>,
        mut beliefs: Vec<Vec<Vec<BeliefTuple>>>,
    ) -> Result<Self> {
        mode.validate(&game)?;
        validate_types(&game, &types)?;
        if beliefs.len() != game.players() {
            return Err(Error::InvalidSpace("one belief list per player is required".into()));
        }
        for (i, per_type) in beliefs.iter_mut().enumerate() {
            if per_type.len() != types[i].len() {
                return Err(Error::InvalidSpace(format!(
                    "player {} has {} types but {} belief sets",
                    i + 1,
                    types[i].len(),
                    per_type.len()
                )));
            }
            for (t, set) in per_type.iter_mut().enumerate() {
                if set.is_empty() {
                    return Err(Error::InvalidSpace(format!(
                        "type {:?} of player {} has an empty belief set",
                        types[i][t],
                        i + 1
                    )));
                }
                for tuple in set.iter() {
                    validate_tuple(&game, &mode, &types, i, tuple)?;
                }
                set.sort();
                set.dedup();
            }
        }
        Ok(BkSpace {
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

    pub fn players(&self) -> usize {
        self.game.players()
    }

    pub fn types(&self, player: usize) -> &[String] {
        &self.types[player]
    }

    pub fn type_lists(&self) -> &[Vec<String>] {
        &self.types
    }

    pub fn belief(&self, player: usize, t: usize) -> &[BeliefTuple] {
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

    pub fn type_label(&self, r: TypeRef) -> &str {
        &self.types[r.player][r.index]
    }

    /// Every type of every player, ordered by player then index.
    pub fn all_types(&self) -> Vec<TypeRef> {
        self.types
            .iter()
            .enumerate()
            .flat_map(|(i, ts)| (0..ts.len()).map(move |t| TypeRef::new(i, t)))
            .collect()
    }

    fn check_type(&self, player: usize, t: usize) -> Result<()> {
        if player >= self.players() || t >= self.types[player].len() {
            return Err(Error::UnknownType {
                player,
                label: t.to_string(),
            });
        }
        Ok(())
    }

    fn check_state(&self, player: usize, st: PlayerState) -> Result<()> {
        self.check_type(player, st.type_index)?;
        if st.choice >= self.mode.choice_count(&self.game, player) {
            return Err(Error::InvalidSpace(format!(
                "choice {} is out of range for player {}",
                st.choice,
                player + 1
            )));
        }
        Ok(())
    }
}

/// An equivalence relation on the tagged types, stored as its partition.
/// Blocks are sorted internally and ordered by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdentificationRelation {
    blocks: Vec<Vec<TypeRef>>,
}

impl IdentificationRelation {
    pub fn new(mut blocks: Vec<Vec<TypeRef>>) -> Self {
        for b in &mut blocks {
            b.sort();
        }
        blocks.sort();
        IdentificationRelation { blocks }
    }

    pub fn identity(space: &BkSpace) -> Self {
        Self::new(space.all_types().into_iter().map(|t| vec![t]).collect())
    }

    pub fn single_block(space: &BkSpace) -> Self {
        Self::new(vec![space.all_types()])
    }

    /// Equivalence closure of `pairs` over the types of `space`.
    pub fn generated_by(space: &BkSpace, pairs: &[(TypeRef, TypeRef)]) -> Result<Self> {
        let all = space.all_types();
        let index = |r: &TypeRef| {
            all.binary_search(r).map_err(|_| Error::UnknownType {
                player: r.player,
                label: r.index.to_string(),
            })
        };
        let mut parent: Vec<usize> = (0..all.len()).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (a, b) in pairs {
            let (ra, rb) = (root(&mut parent, index(a)?), root(&mut parent, index(b)?));
            parent[ra.max(rb)] = ra.min(rb);
        }
        let mut blocks: Vec<Vec<TypeRef>> = Vec::new();
        let mut block_of_root = vec![usize::MAX; all.len()];
        for (k, t) in all.iter().enumerate() {
            let r = root(&mut parent, k);
            if block_of_root[r] == usize::MAX {
                block_of_root[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[block_of_root[r]].push(*t);
        }
        Ok(Self::new(blocks))
    }

    pub fn blocks(&self) -> &[Vec<TypeRef>] {
        &self.blocks
    }

    pub fn related(&self, a: TypeRef, b: TypeRef) -> bool {
        self.blocks.iter().any(|blk| blk.contains(&a) && blk.contains(&b))
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &IdentificationRelation) -> bool {
        self.blocks
            .iter()
            .all(|b| other.blocks.iter().any(|o| b.iter().all(|t| o.contains(t))))
    }

    /// Blocks as label lists, e.g. `{r,u}`. Labels are prefixed with the
    /// 1-based player when two players share a label.
    pub fn display<'a>(&'a self, space: &'a BkSpace) -> impl fmt::Display + 'a {
        RelationDisplay {
            relation: self,
            space,
        }
    }

    pub fn block_labels(&self, space: &BkSpace) -> Vec<Vec<String>> {
        let mut seen = std::collections::HashSet::new();
        let ambiguous = space
            .all_types()
            .iter()
            .any(|&t| !seen.insert(space.type_label(t)));
        self.blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|&t| {
                        if ambiguous {
                            format!("{}:{}", t.player + 1, space.type_label(t))
                        } else {
                            space.type_label(t).to_string()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn block_ids(&self, space: &BkSpace) -> Vec<Vec<usize>> {
        let mut ids: Vec<Vec<usize>> = space.types.iter().map(|ts| vec![usize::MAX; ts.len()]).collect();
        for (b, blk) in self.blocks.iter().enumerate() {
            for t in blk {
                ids[t.player][t.index] = b;
            }
        }
        ids
    }

    fn check_partition(&self, space: &BkSpace) -> Result<()> {
        let mut listed: Vec<TypeRef> = self.blocks.iter().flatten().copied().collect();
        if self.blocks.iter().any(Vec::is_empty) {
            return Err(Error::NotAPartition("empty block".into()));
        }
        listed.sort();
        let n_listed = listed.len();
        listed.dedup();
        if listed.len() != n_listed {
            return Err(Error::NotAPartition("a type occurs in two blocks".into()));
        }
        if listed != space.all_types() {
            return Err(Error::NotAPartition(
                "blocks do not cover exactly the types of the space".into(),
            ));
        }
        Ok(())
    }
}

struct RelationDisplay<'a> {
    relation: &'a IdentificationRelation,
    space: &'a BkSpace,
}

impl fmt::Display for RelationDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .relation
            .block_labels(self.space)
            .into_iter()
            .map(|b| format!("{{{}}}", b.join(",")))
            .collect();
        write!(f, "{}", blocks.join(","))
    }
}

/// A related pair whose beliefs cannot be matched, with the first tuple of
/// the first type's belief left unmatched by the first candidate
/// permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentificationViolation {
    pub pair: (TypeRef, TypeRef),
    pub permutation: Permutation,
    pub unmatched: BeliefTuple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationVerdict {
    Valid,
    Violation(IdentificationViolation),
}

impl RelationVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, RelationVerdict::Valid)
    }
}

fn permutations_sending(n: usize) -> Vec<Vec<Vec<Permutation>>> {
    let all = Permutation::all(n);
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| all.iter().filter(|p| p.apply(i) == j).cloned().collect())
                .collect()
        })
        .collect()
}

struct Matcher<'a> {
    space: &'a BkSpace,
    perms: Vec<Vec<Vec<Permutation>>>,
}

impl<'a> Matcher<'a> {
    fn new(space: &'a BkSpace) -> Self {
        Matcher {
            space,
            perms: permutations_sending(space.players()),
        }
    }

    fn tuples_match(&self, ids: &[Vec<usize>], i: usize, u: &BeliefTuple, j: usize, v: &BeliefTuple, tau: &Permutation) -> bool {
        let s = self.space;
        opponents(s.players(), i).all(|k| {
            let (a, uk) = u[tuple_position(i, k)];
            let tk = tau.apply(k);
            let (b, vk) = v[tuple_position(j, tk)];
            s.mode.same_choice(&s.game, k, a, tk, b) && ids[k][uk] == ids[tk][vk]
        })
    }

    /// First tuple of `x`'s belief without a partner in `y`'s belief under
    /// `tau`, if any.
    fn unmatched<'b>(&'b self, ids: &[Vec<usize>], x: TypeRef, y: TypeRef, tau: &Permutation) -> Option<&'b BeliefTuple> {
        let fx = self.space.belief(x.player, x.index);
        let fy = self.space.belief(y.player, y.index);
        fx.iter().find(|u| {
            !fy.iter()
                .any(|v| self.tuples_match(ids, x.player, u, y.player, v, tau))
        })
    }

    /// The matching condition for the ordered pair `(x, y)` relative to the
    /// partition `ids`. On failure returns the witness for the first
    /// permutation.
    fn check(&self, ids: &[Vec<usize>], x: TypeRef, y: TypeRef) -> std::result::Result<(), IdentificationViolation> {
        let candidates = &self.perms[x.player][y.player];
        let mut first_failure = None;
        for tau in candidates {
            match self.unmatched(ids, x, y, tau) {
                None => return Ok(()),
                Some(u) => {
                    if first_failure.is_none() {
                        first_failure = Some((tau.clone(), u.clone()));
                    }
                }
            }
        }
        let (permutation, unmatched) = first_failure.expect("at least one permutation sends i to j");
        Err(IdentificationViolation {
            pair: (x, y),
            permutation,
            unmatched,
        })
    }

    fn mutual(&self, ids: &[Vec<usize>], x: TypeRef, y: TypeRef) -> bool {
        self.check(ids, x, y).is_ok() && self.check(ids, y, x).is_ok()
    }
}

/// Checks the matching condition for every ordered pair of related types.
pub fn is_identification_relation(space: &BkSpace, r: &IdentificationRelation) -> Result<RelationVerdict> {
    r.check_partition(space)?;
    let ids = r.block_ids(space);
    let matcher = Matcher::new(space);
    for block in r.blocks() {
        for &x in block {
            for &y in block {
                if x == y {
                    continue;
                }
                if let Err(v) = matcher.check(&ids, x, y) {
                    return Ok(RelationVerdict::Violation(v));
                }
            }
        }
    }
    Ok(RelationVerdict::Valid)
}

/// Result of the refinement loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refinement {
    pub relation: IdentificationRelation,
    /// Rounds that split at least one block.
    pub rounds: usize,
}

/// Coarsest identification relation, by refinement from the one-block
/// partition. Within a round, a block is split into the classes of mutual
/// matching relative to the current partition (an equivalence: matchings
/// compose along composed permutations).
pub fn refine_identification(space: &BkSpace) -> Refinement {
    let matcher = Matcher::new(space);
    let mut current = IdentificationRelation::single_block(space);
    let mut rounds = 0;
    loop {
        let ids = current.block_ids(space);
        let mut next: Vec<Vec<TypeRef>> = Vec::new();
        for block in current.blocks() {
            let mut rest = block.clone();
            while let Some(&rep) = rest.first() {
                let (same, other): (Vec<TypeRef>, Vec<TypeRef>) =
                    rest.iter().partition(|&&t| t == rep || matcher.mutual(&ids, rep, t));
                next.push(same);
                rest = other;
            }
        }
        let next = IdentificationRelation::new(next);
        if next.blocks.len() == current.blocks.len() {
            return Refinement {
                relation: current,
                rounds,
            };
        }
        current = next;
        rounds += 1;
    }
}

pub fn greatest_identification_relation(space: &BkSpace) -> IdentificationRelation {
    refine_identification(space).relation
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BkReason {
    NotSingleton { size: usize },
    BelievesOtherType { opponent: usize, believed: String },
    ChoicesDisagree,
    NotJustified { choice: usize },
    NoJustifiedChoice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BkTypeVerdict {
    Superrational { choice: usize },
    NotSuperrational(BkReason),
}

impl BkTypeVerdict {
    pub fn choice(&self) -> Option<usize> {
        match self {
            BkTypeVerdict::Superrational { choice } => Some(*choice),
            BkTypeVerdict::NotSuperrational(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BkOutcome {
    pub choices: Vec<usize>,
    pub theorem: TheoremCheck,
}

/// Checks over a [`BkSpace`] sharing one justification and one greatest
/// identification relation.
#[derive(Debug, Clone)]
pub struct BkChecker<'a> {
    space: &'a BkSpace,
    justification: Result<Justification>,
    greatest: Refinement,
}

impl<'a> BkChecker<'a> {
    pub fn new(space: &'a BkSpace, cfg: &OptimizerConfig) -> Self {
        BkChecker {
            space,
            justification: Justification::new(&space.game, &space.mode, cfg),
            greatest: refine_identification(space),
        }
    }

    pub fn space(&self) -> &BkSpace {
        self.space
    }

    pub fn justification(&self) -> Result<&Justification> {
        self.justification.as_ref().map_err(Clone::clone)
    }

    pub fn greatest_relation(&self) -> &IdentificationRelation {
        &self.greatest.relation
    }

    pub fn refinement_rounds(&self) -> usize {
        self.greatest.rounds
    }

    /// Same-type-set test: the belief is the single tuple in which every
    /// opponent has this type's label and all make one justified choice.
    pub fn is_bk_superrational_type(&self, player: usize, t: usize) -> Result<BkTypeVerdict> {
        let s = self.space;
        s.check_type(player, t)?;
        if !s.has_common_type_sets() {
            return Err(Error::TypeSetsDiffer);
        }
        self.justification()?;
        let label = &s.types[player][t];
        let belief = s.belief(player, t);
        let [tuple] = belief else {
            return Ok(BkTypeVerdict::NotSuperrational(BkReason::NotSingleton { size: belief.len() }));
        };
        for j in opponents(s.players(), player) {
            let believed = &s.types[j][tuple[tuple_position(player, j)].1];
            if believed != label {
                return Ok(BkTypeVerdict::NotSuperrational(BkReason::BelievesOtherType {
                    opponent: j,
                    believed: believed.clone(),
                }));
            }
        }
        self.common_justified_choice(player, tuple)
    }

    /// The shared choice of a belief tuple, translated to `player`'s own
    /// choice index, if all opponents agree and it is justified.
    fn common_justified_choice(&self, player: usize, tuple: &BeliefTuple) -> Result<BkTypeVerdict> {
        let s = self.space;
        let justification = self.justification()?;
        let mut opp = opponents(s.players(), player);
        let choice = match opp.next() {
            None => match justification.first_justified() {
                Some(c) => c,
                None => return Ok(BkTypeVerdict::NotSuperrational(BkReason::NoJustifiedChoice)),
            },
            Some(j0) => {
                let c0 = tuple[tuple_position(player, j0)].0;
                for j in opp {
                    let c = tuple[tuple_position(player, j)].0;
                    if !s.mode.same_choice(&s.game, j0, c0, j, c) {
                        return Ok(BkTypeVerdict::NotSuperrational(BkReason::ChoicesDisagree));
                    }
                }
                match &s.mode {
                    ChoiceMode::Pure => match s.game.action_index(player, &s.game.actions(j0)[c0]) {
                        Some(c) => c,
                        None => return Ok(BkTypeVerdict::NotSuperrational(BkReason::ChoicesDisagree)),
                    },
                    ChoiceMode::Mixed(_) => c0,
                }
            }
        };
        if !justification.is_justified(choice) {
            return Ok(BkTypeVerdict::NotSuperrational(BkReason::NotJustified { choice }));
        }
        Ok(BkTypeVerdict::Superrational { choice })
    }

    /// The type is superrational and the state's choice is the one it is
    /// certain of.
    pub fn is_superrational_state(&self, player: usize, st: PlayerState) -> Result<bool> {
        self.space.check_state(player, st)?;
        let verdict = self.is_bk_superrational_type(player, st.type_index)?;
        Ok(self.state_choice_fits(player, st, &verdict))
    }

    fn state_choice_fits(&self, player: usize, st: PlayerState, verdict: &BkTypeVerdict) -> bool {
        match verdict {
            BkTypeVerdict::NotSuperrational(_) => false,
            BkTypeVerdict::Superrational { choice } => {
                if self.space.players() == 1 {
                    self.justification().is_ok_and(|j| j.is_justified(st.choice))
                } else {
                    self.space
                        .mode
                        .same_choice(&self.space.game, player, st.choice, player, *choice)
                }
            }
        }
    }

    /// State test for possibly different type sets: a single believed tuple
    /// in which every opponent makes the state's choice with a type related
    /// to the player's own under the greatest identification relation. The
    /// strict test also requires the choice to be justified.
    pub fn is_superrational_state_dissimilar(&self, player: usize, st: PlayerState, strict: bool) -> Result<bool> {
        let s = self.space;
        s.check_state(player, st)?;
        let [tuple] = s.belief(player, st.type_index) else {
            return Ok(false);
        };
        let own = TypeRef::new(player, st.type_index);
        let relation = self.greatest_relation();
        for j in opponents(s.players(), player) {
            let (c, t) = tuple[tuple_position(player, j)];
            if !s.mode.same_choice(&s.game, player, st.choice, j, c) {
                return Ok(false);
            }
            if !relation.related(TypeRef::new(j, t), own) {
                return Ok(false);
            }
        }
        if strict {
            return Ok(self.justification()?.is_justified(st.choice));
        }
        Ok(true)
    }

    /// Projects the states to their choices. The theorem premises are a
    /// symmetric game, a unique superrational choice, and every state
    /// passing the same-type-set test or the strict dissimilar test.
    pub fn bk_outcome(&self, states: &[PlayerState]) -> Result<BkOutcome> {
        let s = self.space;
        if states.len() != s.players() {
            return Err(Error::DimensionMismatch(format!(
                "{} states for {} players",
                states.len(),
                s.players()
            )));
        }
        for (i, &st) in states.iter().enumerate() {
            s.check_state(i, st)?;
        }
        let choices: Vec<usize> = states.iter().map(|st| st.choice).collect();
        let Ok(justification) = self.justification() else {
            return Ok(BkOutcome {
                choices,
                theorem: TheoremCheck {
                    premises: false,
                    conclusion: false,
                },
            });
        };
        let mut premises = is_symmetric(&s.game).is_symmetric() && justification.unique().is_some();
        if premises {
            for (i, &st) in states.iter().enumerate() {
                let same_types = s.has_common_type_sets() && self.is_superrational_state(i, st)?;
                if !same_types && !self.is_superrational_state_dissimilar(i, st, true)? {
                    premises = false;
                    break;
                }
            }
        }
        let conclusion = choices.iter().all(|&c| justification.is_unique_choice(c));
        Ok(BkOutcome {
            choices,
            theorem: TheoremCheck {
                premises,
                conclusion,
            },
        })
    }
}

/// One self-referential type `"t"` per player, certain that all opponents
/// play the first superrationally justifiable action.
pub fn make_superrational_bk_space(game: &Game) -> Result<BkSpace> {
    let a = *sr_justifiable_actions(game)?
        .first()
        .ok_or(Error::NoJustifiableAction)?;
    let n = game.players();
    BkSpace::new(
        game.clone(),
        ChoiceMode::Pure,
        vec![vec!["t".to_string()]; n],
        vec![vec![vec![vec![(a, 0); n - 1]]]; n],
    )
}

/// Mixed-mode analogue with the optimizer's best superrational strategy as
/// the single candidate.
pub fn make_superrational_bk_space_mixed(game: &Game, cfg: &OptimizerConfig) -> Result<BkSpace> {
    let report = superrational_mixed(game, cfg)?;
    let best = report.maximizers.first().ok_or(Error::NoJustifiableAction)?;
    let n = game.players();
    BkSpace::new(
        game.clone(),
        ChoiceMode::Mixed(vec![exact_candidate(&best.strategy)]),
        vec![vec!["t".to_string()]; n],
        vec![vec![vec![vec![(0, 0); n - 1]]]; n],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::mixed::MixedStrategy;
    use crate::rational::ratio;

    const C: usize = 0;
    const D: usize = 1;

    /// T1 = {r, s, t}, T2 = {u, w}; r→(C,u), s→(D,w), t→(D,u), u→(C,r), w→(D,s).
    fn dissimilar_pd() -> BkSpace {
        BkSpace::new(
            catalog::prisoners_dilemma(),
            ChoiceMode::Pure,
            vec![
                vec!["r".into(), "s".into(), "t".into()],
                vec!["u".into(), "w".into()],
            ],
            vec![
                vec![vec![vec![(C, 0)]], vec![vec![(D, 1)]], vec![vec![(D, 0)]]],
                vec![vec![vec![(C, 0)]], vec![vec![(D, 1)]]],
            ],
        )
        .unwrap()
    }

    fn same_type_pd(belief: Vec<BeliefTuple>) -> BkSpace {
        BkSpace::new(
            catalog::prisoners_dilemma(),
            ChoiceMode::Pure,
            vec![vec!["t".into()]; 2],
            vec![vec![belief.clone()], vec![belief]],
        )
        .unwrap()
    }

    fn t(player: usize, index: usize) -> TypeRef {
        TypeRef::new(player, index)
    }

    fn st(choice: usize, type_index: usize) -> PlayerState {
        PlayerState { choice, type_index }
    }

    #[test]
    fn bk_superrational_types_in_prisoners_dilemma() {
        let cfg = OptimizerConfig::default();
        let space = same_type_pd(vec![vec![(C, 0)]]);
        let checker = BkChecker::new(&space, &cfg);
        assert_eq!(
            checker.is_bk_superrational_type(0, 0).unwrap(),
            BkTypeVerdict::Superrational { choice: C }
        );
        assert!(checker.is_superrational_state(0, st(C, 0)).unwrap());
        assert!(!checker.is_superrational_state(0, st(D, 0)).unwrap());

        let space = same_type_pd(vec![vec![(C, 0)], vec![(D, 0)]]);
        let checker = BkChecker::new(&space, &cfg);
        assert_eq!(
            checker.is_bk_superrational_type(0, 0).unwrap(),
            BkTypeVerdict::NotSuperrational(BkReason::NotSingleton { size: 2 })
        );

        let space = same_type_pd(vec![vec![(D, 0)]]);
        let checker = BkChecker::new(&space, &cfg);
        assert_eq!(
            checker.is_bk_superrational_type(0, 0).unwrap(),
            BkTypeVerdict::NotSuperrational(BkReason::NotJustified { choice: D })
        );
    }

    #[test]
    fn differing_type_sets_are_rejected_by_same_set_checks() {
        let space = dissimilar_pd();
        let checker = BkChecker::new(&space, &OptimizerConfig::default());
        assert_eq!(checker.is_bk_superrational_type(0, 0), Err(Error::TypeSetsDiffer));
    }

    #[test]
    fn empty_belief_set_names_the_type() {
        let err = BkSpace::new(
            catalog::prisoners_dilemma(),
            ChoiceMode::Pure,
            vec![vec!["t".into()], vec!["lonely".into()]],
            vec![vec![vec![vec![(C, 0)]]], vec![vec![]]],
        )
        .unwrap_err();
        assert!(err.to_string().contains("lonely"), "{err}");
    }

    #[test]
    fn generated_relation_is_an_identification_relation() {
        let space = dissimilar_pd();
        let r = IdentificationRelation::generated_by(&space, &[(t(0, 0), t(1, 0)), (t(0, 1), t(1, 1))]).unwrap();
        assert_eq!(r.blocks(), &[vec![t(0, 0), t(1, 0)], vec![t(0, 1), t(1, 1)], vec![t(0, 2)]]);
        assert!(is_identification_relation(&space, &r).unwrap().is_valid());
    }

    #[test]
    fn mismatched_actions_violate() {
        let space = dissimilar_pd();
        // r believes C, w believes D
        let r = IdentificationRelation::generated_by(&space, &[(t(0, 0), t(1, 1))]).unwrap();
        match is_identification_relation(&space, &r).unwrap() {
            RelationVerdict::Violation(v) => {
                assert_eq!(v.pair, (t(0, 0), t(1, 1)));
                assert_eq!(v.unmatched, vec![(C, 0)]);
            }
            RelationVerdict::Valid => panic!("expected a violation"),
        }
    }

    #[test]
    fn identity_on_self_referential_diracs() {
        let space = same_type_pd(vec![vec![(C, 0)]]);
        let id = IdentificationRelation::identity(&space);
        assert!(is_identification_relation(&space, &id).unwrap().is_valid());
    }

    #[test]
    fn partition_errors() {
        let space = dissimilar_pd();
        let missing = IdentificationRelation::new(vec![vec![t(0, 0)]]);
        assert!(matches!(is_identification_relation(&space, &missing), Err(Error::NotAPartition(_))));
        let twice = IdentificationRelation::new(vec![
            vec![t(0, 0), t(0, 1)],
            vec![t(0, 1), t(0, 2), t(1, 0), t(1, 1)],
        ]);
        assert!(matches!(is_identification_relation(&space, &twice), Err(Error::NotAPartition(_))));
        let foreign = IdentificationRelation::new(vec![space.all_types(), vec![t(3, 0)]]);
        assert!(matches!(is_identification_relation(&space, &foreign), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn greatest_relation_of_the_dissimilar_example() {
        let space = dissimilar_pd();
        let refinement = refine_identification(&space);
        let g = &refinement.relation;
        assert_eq!(g.blocks(), &[vec![t(0, 0), t(1, 0)], vec![t(0, 1), t(1, 1)], vec![t(0, 2)]]);
        assert_eq!(g.display(&space).to_string(), "{r,u},{s,w},{t}");
        assert!(is_identification_relation(&space, g).unwrap().is_valid());
        assert!(refinement.rounds <= space.all_types().len());
    }

    #[test]
    fn greatest_relation_trivial_cases() {
        let space = same_type_pd(vec![vec![(C, 0)]]);
        let g = greatest_identification_relation(&space);
        assert_eq!(g, IdentificationRelation::single_block(&space));
        assert_eq!(g.display(&space).to_string(), "{1:t,2:t}");

        // each player only ever believes actions the other never believes
        let game = catalog::bimatrix(&["a", "b"], &["a", "b"], &[&[(0, 0), (0, 0)], &[(0, 0), (0, 0)]]);
        let space = BkSpace::new(
            game,
            ChoiceMode::Pure,
            vec![vec!["x".into()], vec!["y".into()]],
            vec![vec![vec![vec![(1, 0)]]], vec![vec![vec![(0, 0)]]]],
        )
        .unwrap();
        assert_eq!(greatest_identification_relation(&space), IdentificationRelation::identity(&space));
    }

    #[test]
    fn strict_and_weak_dissimilar_states() {
        let space = dissimilar_pd();
        let checker = BkChecker::new(&space, &OptimizerConfig::default());
        let mut strict = Vec::new();
        let mut weak = Vec::new();
        for player in 0..2 {
            for ti in 0..space.types(player).len() {
                for c in [C, D] {
                    if checker.is_superrational_state_dissimilar(player, st(c, ti), true).unwrap() {
                        strict.push((player, c, space.types(player)[ti].clone()));
                    }
                    if checker.is_superrational_state_dissimilar(player, st(c, ti), false).unwrap() {
                        weak.push((player, c, space.types(player)[ti].clone()));
                    }
                }
            }
        }
        assert_eq!(strict, vec![(0, C, "r".to_string()), (1, C, "u".to_string())]);
        assert_eq!(
            weak,
            vec![
                (0, C, "r".to_string()),
                (0, D, "s".to_string()),
                (1, C, "u".to_string()),
                (1, D, "w".to_string())
            ]
        );
    }

    #[test]
    fn outcomes_of_the_dissimilar_example() {
        let space = dissimilar_pd();
        let checker = BkChecker::new(&space, &OptimizerConfig::default());
        let out = checker.bk_outcome(&[st(C, 0), st(C, 0)]).unwrap();
        assert_eq!(out.choices, vec![C, C]);
        assert!(out.theorem.flag());
        let out = checker.bk_outcome(&[st(C, 0), st(D, 1)]).unwrap();
        assert_eq!(out.choices, vec![C, D]);
        assert!(!out.theorem.flag());
        assert!(matches!(
            checker.bk_outcome(&[st(C, 7), st(C, 0)]),
            Err(Error::UnknownType { .. })
        ));
    }

    #[test]
    fn single_player_outcome() {
        let game = Game::new(vec![vec!["x".into(), "y".into()]], vec![vec![ratio(1, 1)], vec![ratio(2, 1)]]).unwrap();
        let space = BkSpace::new(game, ChoiceMode::Pure, vec![vec!["t".into()]], vec![vec![vec![vec![]]]]).unwrap();
        let checker = BkChecker::new(&space, &OptimizerConfig::default());
        let out = checker.bk_outcome(&[st(1, 0)]).unwrap();
        assert_eq!(out.choices, vec![1]);
        assert!(out.theorem.flag());
        assert!(!checker.bk_outcome(&[st(0, 0)]).unwrap().theorem.flag());
    }

    #[test]
    fn mixed_mode_platonia() {
        let game = catalog::platonia(3);
        let third = MixedStrategy::exact(vec![ratio(1, 3), ratio(2, 3)]).unwrap();
        let space = BkSpace::new(
            game,
            ChoiceMode::Mixed(vec![third, MixedStrategy::pure(2, 0)]),
            vec![vec!["t".into()]; 3],
            vec![vec![vec![vec![(0, 0), (0, 0)]]]; 3],
        )
        .unwrap();
        let checker = BkChecker::new(&space, &OptimizerConfig::default());
        assert_eq!(
            checker.is_bk_superrational_type(1, 0).unwrap(),
            BkTypeVerdict::Superrational { choice: 0 }
        );
        let out = checker.bk_outcome(&[st(0, 0); 3]).unwrap();
        assert!(out.theorem.flag());
        assert!(!checker.is_superrational_state(0, st(1, 0)).unwrap());
    }

    #[test]
    fn generated_spaces_pass() {
        let cfg = OptimizerConfig::default();
        let space = make_superrational_bk_space(&catalog::prisoners_dilemma()).unwrap();
        let checker = BkChecker::new(&space, &cfg);
        assert!(checker.is_superrational_state(0, st(C, 0)).unwrap());
        assert!(checker.bk_outcome(&[st(C, 0); 2]).unwrap().theorem.flag());
        let space = make_superrational_bk_space_mixed(&catalog::platonia(3), &cfg).unwrap();
        let checker = BkChecker::new(&space, &cfg);
        assert!(checker.bk_outcome(&[st(0, 0); 3]).unwrap().theorem.flag());
    }

    #[test]
    fn three_player_permutation_matching() {
        // player 1's type believes (C,x),(D,y) for players 2 and 3; player
        // 2's type believes (C,x) for player 1 and (D,y) for player 3: a
        // relabelling sending 1→2, 2→1 matches them
        let game = catalog::platonia(3);
        let labels = vec![vec!["x".to_string()], vec!["x".into()], vec!["y".into()]];
        let space = BkSpace::new(
            game,
            ChoiceMode::Pure,
            labels,
            vec![
                vec![vec![vec![(0, 0), (1, 0)]]],
                vec![vec![vec![(0, 0), (1, 0)]]],
                vec![vec![vec![(1, 0), (1, 0)]]],
            ],
        )
        .unwrap();
        let r = IdentificationRelation::generated_by(&space, &[(t(0, 0), t(1, 0))]).unwrap();
        assert!(is_identification_relation(&space, &r).unwrap().is_valid());
        let g = greatest_identification_relation(&space);
        assert!(r.refines(&g));
    }
}
