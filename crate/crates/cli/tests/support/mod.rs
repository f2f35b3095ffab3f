//! Seeded generators and independent oracles for the acceptance suite.

pub mod oracles;

use std::collections::HashMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use superrational::bk_types::BkSpace;
use superrational::choice::ChoiceMode;
use superrational::epistemic::BeliefTuple;
use superrational::rational::{from_int, ratio};
use superrational::{Game, Rational};

pub fn labels(m: usize) -> Vec<String> {
    (0..m).map(|a| ((b'a' + a as u8) as char).to_string()).collect()
}

/// Symmetric game: each player's payoff is drawn once per pair of her own
/// action and the sorted list of the opponents' actions.
pub fn symmetric_game(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Game {
    let mut table: HashMap<(usize, Vec<usize>), i64> = HashMap::new();
    Game::from_fn(vec![labels(m); n], |p| {
        (0..n)
            .map(|i| {
                let mut others: Vec<usize> = (0..n).filter(|&k| k != i).map(|k| p[k]).collect();
                others.sort_unstable();
                let v = *table.entry((p[i], others)).or_insert_with(|| rng.random_range(-6..=6));
                from_int(v)
            })
            .collect()
    })
    .unwrap()
}

/// Game with independent integer payoffs and `m` actions per player.
pub fn any_game(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Game {
    Game::from_fn(vec![labels(m); n], |_| (0..n).map(|_| from_int(rng.random_range(-5..=5))).collect()).unwrap()
}

/// Exact probability vector of length `m` with denominators up to 48.
pub fn rational_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<Rational> {
    let w: Vec<i64> = (0..m).map(|_| rng.random_range(0..=12)).collect();
    let total: i64 = w.iter().sum();
    if total == 0 {
        let mut v = vec![ratio(0, 1); m];
        v[0] = ratio(1, 1);
        return v;
    }
    w.iter().map(|&x| ratio(x, total)).collect()
}

/// Possibility structure over a payoff-free game: `sizes[i]` types for
/// player `i`, each believing one or two random tuples.
pub fn random_bk_space(rng: &mut ChaCha8Rng, n: usize, m: usize, sizes: &[usize]) -> BkSpace {
    let game = Game::from_fn(vec![labels(m); n], |_| vec![from_int(0); n]).unwrap();
    let types: Vec<Vec<String>> = (0..n)
        .map(|i| (0..sizes[i]).map(|t| format!("p{}t{t}", i + 1)).collect())
        .collect();
    let beliefs = (0..n)
        .map(|i| {
            (0..sizes[i])
                .map(|_| {
                    let count = rng.random_range(1..=2);
                    (0..count)
                        .map(|_| {
                            (0..n)
                                .filter(|&k| k != i)
                                .map(|k| (rng.random_range(0..m), rng.random_range(0..sizes[k])))
                                .collect::<BeliefTuple>()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    BkSpace::new(game, ChoiceMode::Pure, types, beliefs).unwrap()
}
