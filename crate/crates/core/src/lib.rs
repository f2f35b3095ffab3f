//! Superrational solutions of finite normal-form games.
//!
//! * [`game`]: exact games, symmetry, superrational profiles, pure Nash.
//! * [`mixed`]: expected payoffs, superrational mixed strategies, two-player
//!   mixed Nash equilibria.
//! * [`epistemic`]: finite probabilistic type spaces and the conditions under
//!   which their types lead to superrational play.
//! * [`bk_types`]: finite possibility structures, superrational states and
//!   identification relations between dissimilar type spaces.
//! * [`format`]: the JSON game and type-space file formats.

pub mod bk_types;
pub mod catalog;
pub mod choice;
pub mod epistemic;
pub mod error;
pub mod format;
pub mod game;
mod linalg;
pub mod mixed;
pub mod rational;

pub use error::{Error, Result};
pub use game::{
    diagonal, is_symmetric, pure_nash, sr_justifiable_actions, superrational_profiles,
    ActionProfile, Game, Permutation, SymmetryVerdict, SymmetryWitness,
};
pub use mixed::{
    diagonal_expected_payoff, expected_payoff, mixed_nash_2p, superrational_mixed, MixedProfile,
    MixedStrategy, OptimizerConfig, SrMixedReport, SrMixedStatus,
};
pub use rational::Rational;
