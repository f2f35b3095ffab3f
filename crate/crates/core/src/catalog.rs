//! Small named games used throughout the tests, the CLI and the bindings.

use crate::game::Game;
use crate::rational::from_int;

/// Two-player game from a row-major table of `(row payoff, column payoff)`.
pub fn bimatrix(rows: &[&str], cols: &[&str], table: &[&[(i64, i64)]]) -> Game {
    let actions = vec![
        rows.iter().map(|s| s.to_string()).collect(),
        cols.iter().map(|s| s.to_string()).collect(),
    ];
    Game::from_fn(actions, |p| {
        let (a, b) = table[p[0]][p[1]];
        vec![from_int(a), from_int(b)]
    })
    .expect("catalog tables are well formed")
}

pub fn prisoners_dilemma() -> Game {
    bimatrix(
        &["C", "D"],
        &["C", "D"],
        &[&[(3, 3), (0, 5)], &[(5, 0), (1, 1)]],
    )
}

/// 3×3 game where `a` and `b` are both justifiable but the game is not
/// symmetric.
pub fn justifiable_pair() -> Game {
    bimatrix(
        &["a", "b", "c"],
        &["a", "b", "c"],
        &[
            &[(2, 3), (0, 0), (0, 0)],
            &[(0, 0), (2, 3), (0, 0)],
            &[(0, 0), (0, 0), (2, 2)],
        ],
    )
}

/// Symmetric 3×3 coordination game with two justifiable actions.
pub fn symmetric_coordination() -> Game {
    bimatrix(
        &["a", "b", "c"],
        &["a", "b", "c"],
        &[
            &[(3, 3), (0, 0), (0, 0)],
            &[(0, 0), (3, 3), (0, 0)],
            &[(0, 0), (0, 0), (2, 2)],
        ],
    )
}

pub fn battle_of_the_sexes() -> Game {
    bimatrix(
        &["Box", "Ballet"],
        &["Box", "Ballet"],
        &[&[(2, 1), (0, 0)], &[(0, 0), (1, 2)]],
    )
}

/// Common-action game whose only superrational profile `(b,b)` is beaten
/// by `(b,a)` for both players.
pub fn dominated_diagonal() -> Game {
    bimatrix(
        &["a", "b"],
        &["a", "b"],
        &[&[(0, 0), (0, 0)], &[(2, 2), (1, 1)]],
    )
}

/// Symmetric anti-coordination game: the diagonal pays nothing.
pub fn anti_coordination() -> Game {
    bimatrix(
        &["a", "b"],
        &["a", "b"],
        &[&[(0, 0), (1, 1)], &[(1, 1), (0, 0)]],
    )
}

pub fn chicken() -> Game {
    bimatrix(
        &["S", "Y"],
        &["S", "Y"],
        &[&[(-10, -10), (1, -1)], &[(-1, 1), (0, 0)]],
    )
}

/// `n` players choose to send (`S`) or not send (`D`) a letter; a lone
/// sender receives 1,000,000 and everyone else gets nothing.
pub fn platonia(n: usize) -> Game {
    let actions = vec![vec!["S".to_string(), "D".to_string()]; n];
    Game::from_fn(actions, |p| {
        let senders = p.iter().filter(|&&a| a == 0).count();
        p.iter()
            .map(|&a| from_int(if senders == 1 && a == 0 { 1_000_000 } else { 0 }))
            .collect()
    })
    .expect("platonia is well formed")
}
