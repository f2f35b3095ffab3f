//! Two-player mixed Nash equilibria by support enumeration.
//!
//! For a support pair `(S1, S2)` the strategies of player 2 that make every
//! action of `S1` a best response for player 1 form a polytope; likewise for
//! player 1. Every pair of points of the two polytopes is an equilibrium.
//! When the indifference system has a unique solution the polytope is a
//! point; otherwise its vertices are enumerated by making additional
//! inequality constraints tight, and the game is flagged as degenerate if a
//! nonempty support pair yields more than one vertex.

use num_traits::{One, Zero};

use super::{MixedProfile, MixedStrategy};
use crate::error::{Error, Result};
use crate::game::Game;
use crate::linalg::{solve, LinearSolution};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct MixedNashResult {
    /// Exact equilibria, sorted; in degenerate games these are the vertices
    /// of the equilibrium components.
    pub equilibria: Vec<MixedProfile>,
    /// True when some support pair carries a continuum of equilibria.
    pub degenerate: bool,
}

struct Constraint {
    row: Vec<Rational>,
    rhs: Rational,
}

impl Constraint {
    fn holds(&self, z: &[Rational]) -> bool {
        let lhs: Rational = self.row.iter().zip(z).map(|(a, b)| a * b).sum();
        lhs <= self.rhs
    }
}

/// Vertices of `{y ∈ Δ(supp): (M y)_a = v ∀a ∈ br, (M y)_a ≤ v ∀a ∉ br}`
/// projected to `y`. `matrix[a][b]` is the responder's payoff for her action
/// `a` against the mixer's action `b`.
fn support_vertices(matrix: &[Vec<Rational>], br: &[bool], supp: &[bool]) -> Vec<Vec<Rational>> {
    let m = supp.len();
    let nvars = m + 1;
    let zero = Rational::zero();
    let one = Rational::one();

    let mut eq_rows = Vec::new();
    let mut eq_rhs = Vec::new();
    let mut sum_row = vec![one.clone(); m];
    sum_row.push(zero.clone());
    eq_rows.push(sum_row);
    eq_rhs.push(one.clone());
    for b in (0..m).filter(|&b| !supp[b]) {
        let mut row = vec![zero.clone(); nvars];
        row[b] = one.clone();
        eq_rows.push(row);
        eq_rhs.push(zero.clone());
    }
    let payoff_row = |a: usize| {
        let mut row = matrix[a].clone();
        row.push(-one.clone());
        row
    };
    for a in (0..br.len()).filter(|&a| br[a]) {
        eq_rows.push(payoff_row(a));
        eq_rhs.push(zero.clone());
    }

    let mut ineqs = Vec::new();
    for b in (0..m).filter(|&b| supp[b]) {
        let mut row = vec![zero.clone(); nvars];
        row[b] = -one.clone();
        ineqs.push(Constraint {
            row,
            rhs: zero.clone(),
        });
    }
    for a in (0..br.len()).filter(|&a| !br[a]) {
        ineqs.push(Constraint {
            row: payoff_row(a),
            rhs: zero.clone(),
        });
    }

    let feasible = |z: &[Rational]| ineqs.iter().all(|c| c.holds(z));
    let rank = match solve(&eq_rows, &eq_rhs, nvars) {
        LinearSolution::Inconsistent => return Vec::new(),
        LinearSolution::Unique(z) => {
            return if feasible(&z) {
                vec![z[..m].to_vec()]
            } else {
                Vec::new()
            };
        }
        LinearSolution::Underdetermined { rank } => rank,
    };

    let mut vertices: Vec<Vec<Rational>> = Vec::new();
    for tight in combinations(ineqs.len(), nvars - rank) {
        let mut rows = eq_rows.clone();
        let mut rhs = eq_rhs.clone();
        for &k in &tight {
            rows.push(ineqs[k].row.clone());
            rhs.push(ineqs[k].rhs.clone());
        }
        if let LinearSolution::Unique(z) = solve(&rows, &rhs, nvars) {
            if feasible(&z) {
                let y = z[..m].to_vec();
                if !vertices.contains(&y) {
                    vertices.push(y);
                }
            }
        }
    }
    vertices
}

fn combinations(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            if len - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, len, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= len {
        go(0, len, k, &mut Vec::new(), &mut out);
    }
    out
}

fn mask_to_support(mask: usize, len: usize) -> Vec<bool> {
    (0..len).map(|k| mask & (1 << k) != 0).collect()
}

/// All mixed Nash equilibria of a two-player game (vertex representatives
/// plus a degeneracy flag when equilibria form a continuum).
pub fn mixed_nash_2p(game: &Game) -> Result<MixedNashResult> {
    if game.players() != 2 {
        return Err(Error::NotTwoPlayers(game.players()));
    }
    let (m1, m2) = (game.actions(0).len(), game.actions(1).len());
    // row player's payoffs indexed [own][other], column player's likewise
    let a: Vec<Vec<Rational>> = (0..m1)
        .map(|i| (0..m2).map(|j| game.payoff(&[i, j], 0).clone()).collect())
        .collect();
    let b: Vec<Vec<Rational>> = (0..m2)
        .map(|j| (0..m1).map(|i| game.payoff(&[i, j], 1).clone()).collect())
        .collect();

    let mut pairs: Vec<(Vec<Rational>, Vec<Rational>)> = Vec::new();
    let mut degenerate = false;
    for mask1 in 1..(1usize << m1) {
        let s1 = mask_to_support(mask1, m1);
        for mask2 in 1..(1usize << m2) {
            let s2 = mask_to_support(mask2, m2);
            // player 1's mixture keeps every action of S2 optimal for player 2
            let xs = support_vertices(&b, &s2, &s1);
            if xs.is_empty() {
                continue;
            }
            let ys = support_vertices(&a, &s1, &s2);
            if ys.is_empty() {
                continue;
            }
            if xs.len() > 1 || ys.len() > 1 {
                degenerate = true;
            }
            for x in &xs {
                for y in &ys {
                    let pair = (x.clone(), y.clone());
                    if !pairs.contains(&pair) {
                        pairs.push(pair);
                    }
                }
            }
        }
    }
    pairs.sort_by(|p, q| q.cmp(p));
    let equilibria = pairs
        .into_iter()
        .map(|(x, y)| MixedProfile(vec![MixedStrategy::Exact(x), MixedStrategy::Exact(y)]))
        .collect();
    Ok(MixedNashResult {
        equilibria,
        degenerate,
    })
}
