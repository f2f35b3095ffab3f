//! Mixed strategies: expected payoffs, superrational mixed strategies on the
//! diagonal of the simplex product, and two-player mixed Nash equilibria.

mod nash;
mod optimize;
mod polynomial;
pub(crate) mod simplex;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::Game;
use crate::rational::{is_nonnegative, to_f64, Rational};

pub use nash::{mixed_nash_2p, MixedNashResult};
pub use optimize::{
    superrational_mixed, Maximizer, OptimizerConfig, PlayerOptimum, SrMixedReport, SrMixedStatus,
};
pub use polynomial::DiagonalPolynomial;
pub use simplex::project_onto_simplex;

const FLOAT_SUM_TOLERANCE: f64 = 1e-12;

/// A probability vector over one action list, either exact or floating.
#[derive(Debug, Clone, PartialEq)]
pub enum MixedStrategy {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

impl MixedStrategy {
    pub fn exact(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidStrategy("empty probability vector".into()));
        }
        if !probs.iter().all(is_nonnegative) {
            return Err(Error::InvalidStrategy("negative probability".into()));
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(Error::InvalidStrategy(format!("probabilities sum to {sum}")));
        }
        Ok(MixedStrategy::Exact(probs))
    }

    pub fn float(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidStrategy("empty probability vector".into()));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidStrategy("negative or non-finite probability".into()));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > FLOAT_SUM_TOLERANCE {
            return Err(Error::InvalidStrategy(format!("probabilities sum to {sum}")));
        }
        Ok(MixedStrategy::Float(probs))
    }

    /// Dirac strategy on `index`.
    pub fn pure(dim: usize, index: usize) -> Self {
        MixedStrategy::Exact(
            (0..dim)
                .map(|k| if k == index { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    pub fn uniform(dim: usize) -> Self {
        let p = Rational::new(1.into(), (dim as i64).into());
        MixedStrategy::Exact(vec![p; dim])
    }

    pub fn len(&self) -> usize {
        match self {
            MixedStrategy::Exact(v) => v.len(),
            MixedStrategy::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            MixedStrategy::Exact(v) => v.iter().map(to_f64).collect(),
            MixedStrategy::Float(v) => v.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&[Rational]> {
        match self {
            MixedStrategy::Exact(v) => Some(v),
            MixedStrategy::Float(_) => None,
        }
    }
}

/// One mixed strategy per player.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile(pub Vec<MixedStrategy>);

/// A payoff value, exact when every input strategy was exact.
#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(Rational),
    Float(f64),
}

impl Real {
    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(q) => to_f64(q),
            Real::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Real::Exact(q) => Some(q),
            Real::Float(_) => None,
        }
    }
}

fn check_dimensions(game: &Game, profile: &MixedProfile, player: usize) -> Result<()> {
    let n = game.players();
    if profile.0.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "profile has {} strategies, game has {n} players",
            profile.0.len()
        )));
    }
    if player >= n {
        return Err(Error::DimensionMismatch(format!("player {player} out of range")));
    }
    for (i, s) in profile.0.iter().enumerate() {
        if s.len() != game.actions(i).len() {
            return Err(Error::DimensionMismatch(format!(
                "strategy {} has {} entries, player has {} actions",
                i + 1,
                s.len(),
                game.actions(i).len()
            )));
        }
    }
    Ok(())
}

/// `Σ_a π_i(a) Π_k σ_k(a_k)` over all profiles.
pub fn expected_payoff(game: &Game, profile: &MixedProfile, player: usize) -> Result<Real> {
    check_dimensions(game, profile, player)?;
    let exact: Option<Vec<&[Rational]>> = profile.0.iter().map(MixedStrategy::as_exact).collect();
    match exact {
        Some(strategies) => {
            let mut total = Rational::zero();
            for (k, a) in game.profiles().enumerate() {
                let pay = game.payoff_by_index(k, player);
                if pay.is_zero() {
                    continue;
                }
                let mut weight = Rational::one();
                for (s, &ak) in strategies.iter().zip(&a) {
                    if s[ak].is_zero() {
                        weight = Rational::zero();
                        break;
                    }
                    weight *= &s[ak];
                }
                if !weight.is_zero() {
                    total += pay * weight;
                }
            }
            Ok(Real::Exact(total))
        }
        None => {
            let strategies: Vec<Vec<f64>> = profile.0.iter().map(MixedStrategy::to_f64).collect();
            let mut total = 0.0;
            for (k, a) in game.profiles().enumerate() {
                let weight: f64 = strategies.iter().zip(&a).map(|(s, &ak)| s[ak]).product();
                total += game.payoff_by_index_f64(k, player) * weight;
            }
            Ok(Real::Float(total))
        }
    }
}

/// Expected payoff of `player` when everyone plays `strategy`.
pub fn diagonal_expected_payoff(game: &Game, strategy: &MixedStrategy, player: usize) -> Result<Real> {
    game.require_common_actions()?;
    let profile = MixedProfile(vec![strategy.clone(); game.players()]);
    expected_payoff(game, &profile, player)
}
