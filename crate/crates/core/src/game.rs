//! Finite normal-form games with exact payoffs and the pure-strategy
//! solution concepts: symmetry, the diagonal, superrationally justifiable
//! actions, superrational profiles and pure Nash equilibria.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// A game with `n` players, per-player ordered action labels and a total
/// payoff map stored in profile order (player 0 most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct Game {
    actions: Vec<Vec<String>>,
    strides: Vec<usize>,
    payoffs: Vec<Rational>,
    payoffs_f64: Vec<f64>,
}

impl Game {
    /// `payoffs[k]` is the payoff vector of the `k`-th profile in iteration
    /// order (see [`Game::profiles`]).
    pub fn new(actions: Vec<Vec<String>>, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        let n = actions.len();
        if n == 0 {
            return Err(Error::InvalidGame("a game needs at least one player".into()));
        }
        for (i, list) in actions.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::InvalidGame(format!("player {} has no actions", i + 1)));
            }
            let mut seen = HashSet::new();
            for label in list {
                if !seen.insert(label.as_str()) {
                    return Err(Error::InvalidGame(format!(
                        "duplicate action {label:?} for player {}",
                        i + 1
                    )));
                }
            }
        }
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1]
                .checked_mul(actions[i + 1].len())
                .ok_or_else(|| Error::InvalidGame("too many action profiles".into()))?;
        }
        let total = strides[0]
            .checked_mul(actions[0].len())
            .ok_or_else(|| Error::InvalidGame("too many action profiles".into()))?;
        if payoffs.len() != total {
            return Err(Error::InvalidGame(format!(
                "expected {total} payoff entries, got {}",
                payoffs.len()
            )));
        }
        let mut flat = Vec::with_capacity(total * n);
        for (k, v) in payoffs.into_iter().enumerate() {
            if v.len() != n {
                return Err(Error::InvalidGame(format!(
                    "payoff entry {k} has {} components, expected {n}",
                    v.len()
                )));
            }
            flat.extend(v);
        }
        let payoffs_f64 = flat.iter().map(to_f64).collect();
        Ok(Game {
            actions,
            strides,
            payoffs: flat,
            payoffs_f64,
        })
    }

    /// Builds a game by evaluating `payoff` on every profile.
    pub fn from_fn<F>(actions: Vec<Vec<String>>, mut payoff: F) -> Result<Self>
    where
        F: FnMut(&[usize]) -> Vec<Rational>,
    {
        let profiles: Vec<Vec<usize>> = ProfileIter::new(&actions.iter().map(Vec::len).collect::<Vec<_>>()).collect();
        let payoffs = profiles.iter().map(|p| payoff(p)).collect();
        Game::new(actions, payoffs)
    }

    pub fn players(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self, player: usize) -> &[String] {
        &self.actions[player]
    }

    pub fn action_lists(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn action_counts(&self) -> Vec<usize> {
        self.actions.iter().map(Vec::len).collect()
    }

    pub fn action_index(&self, player: usize, label: &str) -> Option<usize> {
        self.actions.get(player)?.iter().position(|a| a == label)
    }

    pub fn num_profiles(&self) -> usize {
        self.payoffs.len() / self.players()
    }

    /// All action profiles, lexicographic in (player, action position).
    pub fn profiles(&self) -> ProfileIter {
        ProfileIter::new(&self.action_counts())
    }

    pub fn profile_index(&self, profile: &[usize]) -> usize {
        profile.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn payoff(&self, profile: &[usize], player: usize) -> &Rational {
        &self.payoffs[self.profile_index(profile) * self.players() + player]
    }

    pub fn payoff_vector(&self, profile: &[usize]) -> &[Rational] {
        let n = self.players();
        let k = self.profile_index(profile);
        &self.payoffs[k * n..(k + 1) * n]
    }

    pub(crate) fn payoff_by_index_f64(&self, index: usize, player: usize) -> f64 {
        self.payoffs_f64[index * self.players() + player]
    }

    pub(crate) fn payoff_by_index(&self, index: usize, player: usize) -> &Rational {
        &self.payoffs[index * self.players() + player]
    }

    /// Largest absolute payoff, at least 1. Used to scale numerical work.
    pub fn payoff_scale(&self) -> f64 {
        self.payoffs_f64.iter().fold(1.0f64, |m, v| m.max(v.abs()))
    }

    /// True iff all players have identical ordered action lists.
    pub fn has_common_actions(&self) -> bool {
        self.actions.windows(2).all(|w| w[0] == w[1])
    }

    pub(crate) fn require_common_actions(&self) -> Result<()> {
        if self.has_common_actions() {
            Ok(())
        } else {
            Err(Error::DifferentActionSets)
        }
    }

    pub fn profile_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<ActionProfile> {
        if labels.len() != self.players() {
            return Err(Error::DimensionMismatch(format!(
                "profile has {} entries, game has {} players",
                labels.len(),
                self.players()
            )));
        }
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| {
                self.action_index(i, l.as_ref()).ok_or_else(|| {
                    Error::InvalidGame(format!("unknown action {:?} for player {}", l.as_ref(), i + 1))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(ActionProfile)
    }
}

/// Odometer over action profiles; the last player varies fastest.
#[derive(Debug, Clone)]
pub struct ProfileIter {
    counts: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl ProfileIter {
    pub fn new(counts: &[usize]) -> Self {
        let next = if counts.iter().any(|&c| c == 0) {
            None
        } else {
            Some(vec![0; counts.len()])
        };
        ProfileIter {
            counts: counts.to_vec(),
            next,
        }
    }
}

impl Iterator for ProfileIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut k = succ.len();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            succ[k] += 1;
            if succ[k] < self.counts[k] {
                self.next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(current)
    }
}

/// One action index per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionProfile(pub Vec<usize>);

impl ActionProfile {
    pub fn diagonal(action: usize, players: usize) -> Self {
        ActionProfile(vec![action; players])
    }

    pub fn labels(&self, game: &Game) -> Vec<String> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &a)| game.actions(i)[a].clone())
            .collect()
    }

    pub fn display<'a>(&'a self, game: &'a Game) -> impl fmt::Display + 'a {
        DisplayProfile(self, game)
    }
}

struct DisplayProfile<'a>(&'a ActionProfile, &'a Game);

impl fmt::Display for DisplayProfile<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.labels(self.1).join(","))
    }
}

/// A bijection on player indices, `image[k] = τ(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &k in &image {
            if k >= n || seen[k] {
                return Err(Error::InvalidGame(format!("{image:?} is not a permutation")));
            }
            seen[k] = true;
        }
        Ok(Permutation(image))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Swaps `k` and `k + 1`.
    pub fn adjacent_transposition(n: usize, k: usize) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        image.swap(k, k + 1);
        Permutation(image)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (k, &t) in self.0.iter().enumerate() {
            inv[t] = k;
        }
        Permutation(inv)
    }

    /// Every permutation of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryWitness {
    DifferentActionSets,
    PayoffMismatch {
        permutation: Permutation,
        profile: ActionProfile,
        player: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetryVerdict {
    Symmetric,
    NotSymmetric(SymmetryWitness),
}

impl SymmetryVerdict {
    pub fn is_symmetric(&self) -> bool {
        matches!(self, SymmetryVerdict::Symmetric)
    }
}

/// Checks `π_i(a) = π_{τ⁻¹(i)}(a_{τ(1)}, …, a_{τ(n)})` for every profile and
/// player; returns the first failing `(profile, player)`.
pub fn invariance_violation(game: &Game, tau: &Permutation) -> Option<(ActionProfile, usize)> {
    let n = game.players();
    assert_eq!(tau.len(), n, "permutation size must match player count");
    let inv = tau.inverse();
    let mut permuted = vec![0; n];
    for profile in game.profiles() {
        for k in 0..n {
            permuted[k] = profile[tau.apply(k)];
        }
        let lhs = game.payoff_vector(&profile);
        let rhs = game.payoff_vector(&permuted);
        for i in 0..n {
            if lhs[i] != rhs[inv.apply(i)] {
                return Some((ActionProfile(profile), i));
            }
        }
    }
    None
}

/// Symmetry test over the `n − 1` adjacent transpositions, which generate
/// the full symmetric group.
pub fn is_symmetric(game: &Game) -> SymmetryVerdict {
    if !game.has_common_actions() {
        return SymmetryVerdict::NotSymmetric(SymmetryWitness::DifferentActionSets);
    }
    let n = game.players();
    for k in 0..n.saturating_sub(1) {
        let tau = Permutation::adjacent_transposition(n, k);
        if let Some((profile, player)) = invariance_violation(game, &tau) {
            return SymmetryVerdict::NotSymmetric(SymmetryWitness::PayoffMismatch {
                permutation: tau,
                profile,
                player,
            });
        }
    }
    SymmetryVerdict::Symmetric
}

/// Profiles `(a, …, a)` in action-list order.
pub fn diagonal(game: &Game) -> Result<Vec<ActionProfile>> {
    game.require_common_actions()?;
    let n = game.players();
    Ok((0..game.actions(0).len())
        .map(|a| ActionProfile::diagonal(a, n))
        .collect())
}

/// Actions `a*` with `π_i(a*,…,a*) ≥ π_i(a,…,a)` for every player and action.
pub fn sr_justifiable_actions(game: &Game) -> Result<Vec<usize>> {
    game.require_common_actions()?;
    let n = game.players();
    let m = game.actions(0).len();
    let diag: Vec<&[Rational]> = (0..m).map(|a| game.payoff_vector(&vec![a; n])).collect();
    Ok((0..m)
        .filter(|&star| (0..m).all(|a| (0..n).all(|i| diag[star][i] >= diag[a][i])))
        .collect())
}

/// Diagonal profiles that weakly dominate every other diagonal profile for
/// every player.
pub fn superrational_profiles(game: &Game) -> Result<Vec<ActionProfile>> {
    let diag = diagonal(game)?;
    let n = game.players();
    Ok(diag
        .iter()
        .filter(|star| {
            diag.iter().all(|other| {
                (0..n).all(|i| game.payoff(&star.0, i) >= game.payoff(&other.0, i))
            })
        })
        .cloned()
        .collect())
}

/// Pure Nash equilibria by exhaustive enumeration, in profile order.
pub fn pure_nash(game: &Game) -> Vec<ActionProfile> {
    let n = game.players();
    let mut out = Vec::new();
    for profile in game.profiles() {
        let mut deviation = profile.clone();
        let stable = (0..n).all(|i| {
            let current = game.payoff(&profile, i).clone();
            let ok = (0..game.actions(i).len()).all(|alt| {
                deviation[i] = alt;
                game.payoff(&deviation, i) <= &current
            });
            deviation[i] = profile[i];
            ok
        });
        if stable {
            out.push(ActionProfile(profile));
        }
    }
    out
}
