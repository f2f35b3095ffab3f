#![allow(dead_code)]

use proptest::prelude::*;
use superrational::rational::{from_int, ratio};
use superrational::{Game, Rational};

pub fn labels(m: usize) -> Vec<String> {
    (0..m).map(|a| ((b'a' + a as u8) as char).to_string()).collect()
}

/// Symmetric game whose payoff to a player depends on her own action and
/// the counts of the opponents' actions, read from `table` in a fixed order.
pub fn symmetric_from_table(n: usize, m: usize, table: &[i64]) -> Game {
    Game::from_fn(vec![labels(m); n], |p| {
        (0..n)
            .map(|i| {
                let mut counts = vec![0usize; m];
                for (k, &a) in p.iter().enumerate() {
                    if k != i {
                        counts[a] += 1;
                    }
                }
                let key = counts.iter().fold(p[i], |acc, &c| acc * n + c);
                from_int(table[key % table.len()])
            })
            .collect()
    })
    .unwrap()
}

pub fn symmetric_game() -> impl Strategy<Value = Game> {
    (2usize..=3, 1usize..=4)
        .prop_flat_map(|(n, m)| (Just(n), Just(m), prop::collection::vec(-6i64..=6, 64)))
        .prop_map(|(n, m, table)| symmetric_from_table(n, m, &table))
}

pub fn symmetric_game_with(n: std::ops::RangeInclusive<usize>, m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Game> {
    (n, m)
        .prop_flat_map(|(n, m)| (Just(n), Just(m), prop::collection::vec(-6i64..=6, 64)))
        .prop_map(|(n, m, table)| symmetric_from_table(n, m, &table))
}

/// Arbitrary game with independent integer payoffs.
pub fn any_game(n: std::ops::RangeInclusive<usize>, m: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Game> {
    (n, m).prop_flat_map(|(n, m)| {
        let cells = m.pow(n as u32) * n;
        prop::collection::vec(-5i64..=5, cells).prop_map(move |v| {
            let mut it = v.into_iter();
            Game::from_fn(vec![labels(m); n], |_| (0..n).map(|_| from_int(it.next().unwrap())).collect()).unwrap()
        })
    })
}

/// Random exact probability vector of length `m` with small denominators.
pub fn rational_simplex_point(m: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(0i64..=12, m).prop_map(|w| {
        let total: i64 = w.iter().sum();
        if total == 0 {
            let mut v = vec![ratio(0, 1); w.len()];
            v[0] = ratio(1, 1);
            v
        } else {
            w.iter().map(|&x| ratio(x, total)).collect()
        }
    })
}
