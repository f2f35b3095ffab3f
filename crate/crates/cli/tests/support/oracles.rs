//! Reference computations written without the library's algorithms:
//! payoffs by summing over every profile, equilibria by deviation scans,
//! optima by dense grids, identification relations by brute force.

use superrational::bk_types::BkSpace;
use superrational::rational::to_f64;
use superrational::{Game, Rational};

/// `Eπ_player` under independent mixing, summed over all profiles.
pub fn expected(game: &Game, profile: &[Vec<Rational>], player: usize) -> Rational {
    let mut total = Rational::from_integer(0.into());
    for p in game.profiles() {
        let mut weight = Rational::from_integer(1.into());
        for (k, &a) in p.iter().enumerate() {
            weight *= &profile[k][a];
        }
        total += weight * game.payoff(&p, player);
    }
    total
}

pub fn pure_nash(game: &Game) -> Vec<Vec<usize>> {
    game.profiles()
        .filter(|p| {
            (0..game.players()).all(|i| {
                (0..game.actions(i).len()).all(|alt| {
                    let mut q = p.clone();
                    q[i] = alt;
                    game.payoff(&q, i) <= game.payoff(p, i)
                })
            })
        })
        .collect()
}

/// No player gains by switching to a pure strategy.
pub fn is_mixed_nash(game: &Game, profile: &[Vec<Rational>]) -> bool {
    (0..game.players()).all(|i| {
        let value = expected(game, profile, i);
        (0..game.actions(i).len()).all(|alt| {
            let mut dev = profile.to_vec();
            dev[i] = (0..game.actions(i).len())
                .map(|b| Rational::from_integer(((b == alt) as i64).into()))
                .collect();
            expected(game, &dev, i) <= value
        })
    })
}

/// Player 1's diagonal payoff as a sum of monomials in the shared strategy.
pub struct DiagonalOracle {
    terms: Vec<(Vec<i32>, f64)>,
}

impl DiagonalOracle {
    pub fn new(game: &Game) -> Self {
        let m = game.actions(0).len();
        let mut terms: Vec<(Vec<i32>, f64)> = Vec::new();
        for p in game.profiles() {
            let mut counts = vec![0i32; m];
            for &a in &p {
                counts[a] += 1;
            }
            let v = to_f64(game.payoff(&p, 0));
            match terms.iter_mut().find(|(c, _)| *c == counts) {
                Some((_, w)) => *w += v,
                None => terms.push((counts, v)),
            }
        }
        DiagonalOracle { terms }
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, w)| c.iter().zip(x).map(|(&e, &xk)| xk.powi(e)).product::<f64>() * w)
            .sum()
    }

    fn complete(head: &[f64]) -> Option<Vec<f64>> {
        let rest = 1.0 - head.iter().sum::<f64>();
        if head.iter().any(|&v| v < 0.0) || rest < -1e-15 {
            return None;
        }
        let mut x = head.to_vec();
        x.push(rest.max(0.0));
        Some(x)
    }

    /// Maximum over the simplex for 1 to 3 actions: a grid with 1001 points
    /// per free coordinate, then shrinking local grids around the best 12.
    pub fn grid_maximum(&self, m: usize) -> f64 {
        if m == 1 {
            return self.value(&[1.0]);
        }
        let res = 1000usize;
        let step = 1.0 / res as f64;
        let mut points: Vec<(f64, Vec<f64>)> = Vec::new();
        let mut keep = |v: f64, head: &[f64]| {
            points.push((v, head.to_vec()));
            if points.len() >= 4096 {
                points.select_nth_unstable_by(11, |a, b| b.0.total_cmp(&a.0));
                points.truncate(12);
            }
        };
        let mut x = vec![0.0; m];
        for i in 0..=res {
            x[0] = i as f64 * step;
            if m == 2 {
                x[1] = 1.0 - x[0];
                keep(self.value(&x), &x[..1]);
                continue;
            }
            for j in 0..=res - i {
                x[1] = j as f64 * step;
                x[2] = (1.0 - x[0] - x[1]).max(0.0);
                keep(self.value(&x), &x[..2]);
            }
        }
        points.sort_by(|a, b| b.0.total_cmp(&a.0));
        points.truncate(12);
        let offsets: Vec<Vec<i32>> = if m == 2 {
            (-4..=4).map(|s| vec![s]).collect()
        } else {
            (-4..=4).flat_map(|s| (-4..=4).map(move |t| vec![s, t])).collect()
        };
        let mut best = f64::NEG_INFINITY;
        for (value, start) in points {
            let mut centre = start;
            let mut current = value;
            let mut radius = 2.0 * step;
            while radius > 1e-12 {
                let mut improved = false;
                for off in &offsets {
                    let h: Vec<f64> = centre
                        .iter()
                        .zip(off)
                        .map(|(c, &o)| c + o as f64 * radius / 4.0)
                        .collect();
                    if let Some(x) = Self::complete(&h) {
                        let v = self.value(&x);
                        if v > current {
                            current = v;
                            centre = h;
                            improved = true;
                        }
                    }
                }
                if !improved {
                    radius *= 0.5;
                }
            }
            best = best.max(current);
        }
        best
    }
}

/// All permutations of `0..n`, as images.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every partition of `0..k` as a block label per element (restricted
/// growth strings).
pub fn set_partitions(k: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |&b| b + 1);
        for b in 0..=next {
            prefix.push(b);
            extend(prefix, k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), k, &mut out);
    out
}

/// Types of all players in a flat order: player by player, then by index.
pub fn flat_types(space: &BkSpace) -> Vec<(usize, usize)> {
    (0..space.players())
        .flat_map(|i| (0..space.types(i).len()).map(move |t| (i, t)))
        .collect()
}

fn slot(owner: usize, opponent: usize) -> usize {
    if opponent < owner {
        opponent
    } else {
        opponent - 1
    }
}

/// The matching condition for every ordered pair of types with the same
/// label in `blocks` (indexed like [`flat_types`]).
pub fn is_identification(space: &BkSpace, blocks: &[usize]) -> bool {
    let flat = flat_types(space);
    let n = space.players();
    let game = space.game();
    let block_of = |i: usize, t: usize| blocks[flat.iter().position(|&x| x == (i, t)).unwrap()];
    let perms = permutations(n);
    for (xi, &(i, ti)) in flat.iter().enumerate() {
        for (yi, &(j, tj)) in flat.iter().enumerate() {
            if xi == yi || blocks[xi] != blocks[yi] {
                continue;
            }
            let fx = space.belief(i, ti);
            let fy = space.belief(j, tj);
            let matched = perms.iter().filter(|tau| tau[i] == j).any(|tau| {
                fx.iter().all(|u| {
                    fy.iter().any(|v| {
                        (0..n).filter(|&k| k != i).all(|k| {
                            let (a, uk) = u[slot(i, k)];
                            let (b, vk) = v[slot(j, tau[k])];
                            game.actions(k)[a] == game.actions(tau[k])[b] && block_of(k, uk) == block_of(tau[k], vk)
                        })
                    })
                })
            });
            if !matched {
                return false;
            }
        }
    }
    true
}

/// Whether every block of `fine` lies inside one block of `coarse`.
pub fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    (0..fine.len()).all(|x| (0..fine.len()).all(|y| fine[x] != fine[y] || coarse[x] == coarse[y]))
}
