//! Maximisation of diagonal expected payoffs over the simplex.
//!
//! The objective `σ ↦ Eπ_i(σ,…,σ)` is a polynomial of degree `n` on the
//! simplex. Starting points come from a regular grid (its local maxima,
//! best first) and from uniform random draws; each start is refined by
//! projected gradient ascent with a backtracking step. All numerical work
//! is done on payoffs divided by [`Game::payoff_scale`], so tolerances are
//! relative to the largest payoff magnitude.
//!
//! For games that are not symmetric every player has her own diagonal
//! maximum `M_i`; a common superrational strategy exists only if some σ
//! reaches every `M_i` at once, which is decided by maximising
//! `min_i (Eπ_i(σ,…,σ) − M_i)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::polynomial::DiagonalPolynomial;
use super::simplex::{grid_size, project_onto_simplex, random_point, SimplexGrid};
use crate::error::{Error, Result};
use crate::game::{is_symmetric, Game};

/// Upper bound on grid points evaluated for seeding; the resolution is
/// lowered until the grid fits.
const GRID_BUDGET: u128 = 100_000;
/// At most this many grid local maxima are used as ascent seeds.
const MAX_GRID_SEEDS: usize = 64;
/// Optima closer than this in max-norm are reported once.
const MERGE_DISTANCE: f64 = 1e-6;
/// Scaled minimax gap below which no common superrational strategy exists.
const EMPTINESS_TOLERANCE: f64 = 1e-6;
const MIN_STEP: f64 = 1e-20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub tolerance: f64,
    pub grid_points_per_dim: usize,
    pub multistarts: usize,
    pub max_iters: usize,
    pub rng_seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            tolerance: 1e-9,
            grid_points_per_dim: 101,
            multistarts: 32,
            max_iters: 10_000,
            rng_seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidConfig("tolerance must be positive".into()));
        }
        if self.grid_points_per_dim < 2 {
            return Err(Error::InvalidConfig("grid needs at least 2 points per dimension".into()));
        }
        if self.multistarts < 1 {
            return Err(Error::InvalidConfig("at least one start is required".into()));
        }
        if self.max_iters < 1 {
            return Err(Error::InvalidConfig("max_iters must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SrMixedStatus {
    Found,
    Empty,
}

/// A reported optimum. `values[i]` is player `i`'s diagonal expected payoff
/// in game units; `value` is the optimised objective (player 1's payoff for
/// symmetric games, the minimax gap otherwise).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Maximizer {
    pub strategy: Vec<f64>,
    pub value: f64,
    pub values: Vec<f64>,
    /// `‖σ − P(σ + ∇f(σ))‖` on the scaled objective.
    pub stationarity: f64,
    pub converged: bool,
}

/// Player `i`'s own diagonal maximum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerOptimum {
    pub player: usize,
    pub maximizer: Vec<f64>,
    pub value: f64,
    /// Global minimiser of the same objective when it lies strictly inside
    /// the simplex, with its value. Only computed for non-symmetric games.
    pub interior_minimizer: Option<(Vec<f64>, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SrMixedReport {
    pub symmetric: bool,
    pub status: SrMixedStatus,
    pub maximizers: Vec<Maximizer>,
    pub per_player: Vec<PlayerOptimum>,
    /// Best `min_i (Eπ_i − M_i)` in game units (non-symmetric games only).
    pub minimax_gap: Option<f64>,
    /// Largest stationarity measure among reported maximizers.
    pub stationarity: f64,
    /// Set when some reported maximizer hit `max_iters` above tolerance.
    pub nonconvergence: bool,
    pub scale: f64,
    pub grid_resolution: usize,
}

impl SrMixedReport {
    /// Whether `strategy` reaches every player's diagonal maximum within
    /// `tolerance` (relative to the payoff scale).
    pub fn justifies(&self, poly: &DiagonalPolynomial, strategy: &[f64], tolerance: f64) -> bool {
        self.per_player.iter().all(|opt| {
            poly.eval(opt.player, strategy) >= opt.value - tolerance * self.scale
        })
    }

    /// The single superrational mixed strategy, if exactly one was found.
    pub fn unique_maximizer(&self) -> Option<&Maximizer> {
        match (&self.status, self.maximizers.as_slice()) {
            (SrMixedStatus::Found, [only]) => Some(only),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
struct LocalResult {
    x: Vec<f64>,
    f: f64,
    stationarity: f64,
    converged: bool,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn stationarity(x: &[f64], g: &[f64]) -> f64 {
    let moved: Vec<f64> = x.iter().zip(g).map(|(a, b)| a + b).collect();
    let p = project_onto_simplex(&moved);
    norm(&x.iter().zip(&p).map(|(a, b)| a - b).collect::<Vec<_>>())
}

/// Tangential part of `v` (component orthogonal to the all-ones vector).
fn tangential(v: &[f64]) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| x - mean).collect()
}

/// Projected gradient ascent. A step `s` is accepted when it gives a
/// sufficient increase of `f`, or when it respects the local Lipschitz
/// bound `s·‖T(∇f(y) − ∇f(x))‖ ≤ ‖y − x‖`; the second test stays reliable
/// after function values stop resolving progress near a maximum, the
/// first lets the step grow across flat stretches.
fn ascend<F, G>(f: &F, grad: &G, start: &[f64], tol: f64, max_iters: usize) -> LocalResult
where
    F: Fn(&[f64]) -> f64,
    G: Fn(&[f64], &mut [f64]),
{
    let dim = start.len();
    let mut x = project_onto_simplex(start);
    let mut fx = f(&x);
    let mut g = vec![0.0; dim];
    let mut gy = vec![0.0; dim];
    let mut step = 1.0;
    grad(&x, &mut g);
    let mut stat = stationarity(&x, &g);
    for _ in 0..max_iters {
        if stat <= tol {
            break;
        }
        let mut moved = false;
        while step >= MIN_STEP {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(a, b)| a + step * b).collect();
            let y = project_onto_simplex(&trial);
            let d: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
            let dn = norm(&d);
            if dn == 0.0 {
                break;
            }
            grad(&y, &mut gy);
            let dg = norm(&tangential(
                &gy.iter().zip(&g).map(|(a, b)| a - b).collect::<Vec<_>>(),
            ));
            let fy = f(&y);
            let rise: f64 = g.iter().zip(&d).map(|(a, b)| a * b).sum();
            let lipschitz = step * dg <= dn && fy >= fx - 1e-12 * (1.0 + fx.abs());
            let armijo = fy > fx && fy - fx >= 1e-4 * rise;
            if lipschitz || armijo {
                x = y;
                fx = fy;
                std::mem::swap(&mut g, &mut gy);
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
        stat = stationarity(&x, &g);
        step = (step * 2.0).min(1e6);
    }
    LocalResult {
        x,
        f: fx,
        stationarity: stat,
        converged: stat <= tol,
    }
}

fn grid_for(dim: usize, cfg: &OptimizerConfig) -> SimplexGrid {
    let mut resolution = cfg.grid_points_per_dim - 1;
    while resolution > 1 && grid_size(dim, resolution) > GRID_BUDGET {
        resolution = resolution * 3 / 4;
    }
    SimplexGrid::new(dim, resolution.max(1))
}

/// Grid local maxima (best first, capped) followed by random starts.
fn seeds<F: Fn(&[f64]) -> f64>(grid: &SimplexGrid, f: &F, cfg: &OptimizerConfig) -> Vec<Vec<f64>> {
    let dim = grid.points[0].len();
    let r = grid.resolution as f64;
    let mut x = vec![0.0; dim];
    let values: Vec<f64> = grid
        .points
        .iter()
        .map(|p| {
            x.iter_mut().zip(p).for_each(|(xk, &c)| *xk = c as f64 / r);
            f(&x)
        })
        .collect();
    let mut maxima: Vec<usize> = (0..grid.points.len())
        .filter(|&k| grid.is_local_maximum(k, &values))
        .collect();
    maxima.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    maxima.truncate(MAX_GRID_SEEDS);
    let mut out: Vec<Vec<f64>> = maxima.into_iter().map(|k| grid.coords(k)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    out.extend((0..cfg.multistarts).map(|_| random_point(dim, &mut rng)));
    out
}

fn max_norm_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Keeps results within `value_tol` of the best and merges near-duplicates.
fn cluster(mut results: Vec<LocalResult>, value_tol: f64) -> Vec<LocalResult> {
    let best = results.iter().map(|r| r.f).fold(f64::NEG_INFINITY, f64::max);
    results.retain(|r| r.f >= best - value_tol);
    // strongest first, start order breaks ties
    results.sort_by(|a, b| b.f.total_cmp(&a.f));
    let mut kept: Vec<LocalResult> = Vec::new();
    for r in results {
        if kept.iter().all(|k| max_norm_distance(&k.x, &r.x) >= MERGE_DISTANCE) {
            kept.push(r);
        }
    }
    kept.sort_by(|a, b| {
        b.x.iter()
            .zip(&a.x)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    kept
}

fn clean(x: &[f64]) -> Vec<f64> {
    let snapped: Vec<f64> = x.iter().map(|&v| if v < 1e-14 { 0.0 } else { v }).collect();
    let total: f64 = snapped.iter().sum();
    snapped.into_iter().map(|v| v / total).collect()
}

struct PlayerObjective<'a> {
    poly: &'a DiagonalPolynomial,
    player: usize,
    inv_scale: f64,
    sign: f64,
}

impl PlayerObjective<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        self.sign * self.poly.eval(self.player, x) * self.inv_scale
    }

    fn gradient(&self, x: &[f64], out: &mut [f64]) {
        self.poly.gradient(self.player, x, out);
        out.iter_mut().for_each(|g| *g *= self.sign * self.inv_scale);
    }
}

fn optimise_player(
    poly: &DiagonalPolynomial,
    player: usize,
    sign: f64,
    scale: f64,
    grid: &SimplexGrid,
    cfg: &OptimizerConfig,
) -> Vec<LocalResult> {
    let obj = PlayerObjective {
        poly,
        player,
        inv_scale: 1.0 / scale,
        sign,
    };
    let f = |x: &[f64]| obj.value(x);
    let g = |x: &[f64], out: &mut [f64]| obj.gradient(x, out);
    seeds(grid, &f, cfg)
        .iter()
        .map(|s| ascend(&f, &g, s, cfg.tolerance, cfg.max_iters))
        .collect()
}

fn to_maximizer(poly: &DiagonalPolynomial, r: &LocalResult, value: f64) -> Maximizer {
    let strategy = clean(&r.x);
    let values = (0..poly.players()).map(|i| poly.eval(i, &strategy)).collect();
    Maximizer {
        strategy,
        value,
        values,
        stationarity: r.stationarity,
        converged: r.converged,
    }
}

/// Superrational mixed strategies of a common-action game.
pub fn superrational_mixed(game: &Game, cfg: &OptimizerConfig) -> Result<SrMixedReport> {
    cfg.validate()?;
    let poly = DiagonalPolynomial::new(game)?;
    let symmetric = is_symmetric(game).is_symmetric();
    let scale = game.payoff_scale();
    let grid = grid_for(poly.dim(), cfg);
    if symmetric {
        solve_symmetric(&poly, scale, &grid, cfg)
    } else {
        solve_common(&poly, scale, &grid, cfg)
    }
}

fn solve_symmetric(
    poly: &DiagonalPolynomial,
    scale: f64,
    grid: &SimplexGrid,
    cfg: &OptimizerConfig,
) -> Result<SrMixedReport> {
    let results = optimise_player(poly, 0, 1.0, scale, grid, cfg);
    let kept = cluster(results, cfg.tolerance);
    let maximizers: Vec<Maximizer> = kept
        .iter()
        .map(|r| {
            let strategy = clean(&r.x);
            let v = poly.eval(0, &strategy);
            to_maximizer(poly, r, v)
        })
        .collect();
    let best = &maximizers[0];
    let per_player = (0..poly.players())
        .map(|i| PlayerOptimum {
            player: i,
            maximizer: best.strategy.clone(),
            value: best.values[i],
            interior_minimizer: None,
        })
        .collect();
    Ok(SrMixedReport {
        symmetric: true,
        status: SrMixedStatus::Found,
        stationarity: maximizers.iter().map(|m| m.stationarity).fold(0.0, f64::max),
        nonconvergence: maximizers.iter().any(|m| !m.converged),
        maximizers,
        per_player,
        minimax_gap: None,
        scale,
        grid_resolution: grid.resolution,
    })
}

fn solve_common(
    poly: &DiagonalPolynomial,
    scale: f64,
    grid: &SimplexGrid,
    cfg: &OptimizerConfig,
) -> Result<SrMixedReport> {
    let n = poly.players();
    let mut per_player = Vec::with_capacity(n);
    let mut player_maxima = Vec::with_capacity(n);
    let mut seeds_from_players = Vec::new();
    let mut nonconvergence = false;
    for i in 0..n {
        let kept = cluster(optimise_player(poly, i, 1.0, scale, grid, cfg), cfg.tolerance);
        let best = &kept[0];
        nonconvergence |= !best.converged;
        let maximizer = clean(&best.x);
        let value = poly.eval(i, &maximizer);
        player_maxima.push(value / scale);
        seeds_from_players.extend(kept.iter().map(|r| r.x.clone()));

        let minima = optimise_player(poly, i, -1.0, scale, grid, cfg);
        let lowest = minima
            .iter()
            .max_by(|a, b| a.f.total_cmp(&b.f))
            .expect("at least one start");
        let min_point = clean(&lowest.x);
        let interior_minimizer = if min_point.iter().all(|&p| p > 1e-7) {
            let v = poly.eval(i, &min_point);
            Some((min_point, v))
        } else {
            None
        };
        per_player.push(PlayerOptimum {
            player: i,
            maximizer,
            value,
            interior_minimizer,
        });
    }

    let gap = |x: &[f64]| -> f64 {
        (0..n)
            .map(|i| poly.eval(i, x) / scale - player_maxima[i])
            .fold(f64::INFINITY, f64::min)
    };
    let mut starts = seeds_from_players;
    starts.extend(seeds(grid, &gap, cfg));
    let step0 = 1.0 / grid.resolution as f64;
    let results: Vec<LocalResult> = starts
        .iter()
        .map(|s| refine_minimax(poly, scale, &player_maxima, s, step0, cfg))
        .collect();
    let kept = cluster(results, cfg.tolerance);
    let best_gap = kept[0].f;
    let status = if best_gap >= -EMPTINESS_TOLERANCE {
        SrMixedStatus::Found
    } else {
        SrMixedStatus::Empty
    };
    let maximizers = match status {
        SrMixedStatus::Found => kept
            .iter()
            .map(|r| to_maximizer(poly, r, r.f * scale))
            .collect(),
        SrMixedStatus::Empty => Vec::new(),
    };
    Ok(SrMixedReport {
        symmetric: false,
        status,
        stationarity: maximizers.iter().map(|m: &Maximizer| m.stationarity).fold(0.0, f64::max),
        nonconvergence,
        maximizers,
        per_player,
        minimax_gap: Some(best_gap * scale),
        scale,
        grid_resolution: grid.resolution,
    })
}

/// Maximises `min_i (f_i − M_i)` from `start`: smoothed soft-min ascent with
/// increasing sharpness, then compass polishing on the exact minimum.
fn refine_minimax(
    poly: &DiagonalPolynomial,
    scale: f64,
    maxima: &[f64],
    start: &[f64],
    step0: f64,
    cfg: &OptimizerConfig,
) -> LocalResult {
    let n = maxima.len();
    let dim = poly.dim();
    let exact = |x: &[f64]| -> f64 {
        (0..n)
            .map(|i| poly.eval(i, x) / scale - maxima[i])
            .fold(f64::INFINITY, f64::min)
    };
    let mut x = project_onto_simplex(start);
    let iters = (cfg.max_iters / 10).max(10);
    for sharpness in [1e1, 1e2, 1e3, 1e4, 1e5, 1e6] {
        let soft = |y: &[f64]| -> f64 {
            let h: Vec<f64> = (0..n).map(|i| poly.eval(i, y) / scale - maxima[i]).collect();
            let lo = h.iter().cloned().fold(f64::INFINITY, f64::min);
            let s: f64 = h.iter().map(|v| (-sharpness * (v - lo)).exp()).sum();
            lo - s.ln() / sharpness
        };
        let soft_grad = |y: &[f64], out: &mut [f64]| {
            let h: Vec<f64> = (0..n).map(|i| poly.eval(i, y) / scale - maxima[i]).collect();
            let lo = h.iter().cloned().fold(f64::INFINITY, f64::min);
            let w: Vec<f64> = h.iter().map(|v| (-sharpness * (v - lo)).exp()).collect();
            let total: f64 = w.iter().sum();
            out.iter_mut().for_each(|g| *g = 0.0);
            let mut gi = vec![0.0; dim];
            for i in 0..n {
                poly.gradient(i, y, &mut gi);
                for (o, g) in out.iter_mut().zip(&gi) {
                    *o += w[i] / total * g / scale;
                }
            }
        };
        let r = ascend(&soft, &soft_grad, &x, cfg.tolerance, iters);
        if exact(&r.x) >= exact(&x) {
            x = r.x;
        }
    }
    let (x, f) = compass(&exact, x, step0);
    LocalResult {
        x,
        f,
        stationarity: 0.0,
        converged: true,
    }
}

/// Pattern search over the moves `e_to − e_from`, halving the step when no
/// move improves.
fn compass<F: Fn(&[f64]) -> f64>(f: &F, mut x: Vec<f64>, mut step: f64) -> (Vec<f64>, f64) {
    let dim = x.len();
    let mut fx = f(&x);
    let mut evaluations = 0usize;
    while step > 1e-13 && evaluations < 200_000 {
        let mut best: Option<(Vec<f64>, f64)> = None;
        for from in 0..dim {
            if x[from] <= 0.0 {
                continue;
            }
            let amount = step.min(x[from]);
            for to in 0..dim {
                if to == from {
                    continue;
                }
                let mut y = x.clone();
                y[from] -= amount;
                y[to] += amount;
                let fy = f(&y);
                evaluations += 1;
                if fy > best.as_ref().map_or(fx, |b| b.1) {
                    best = Some((y, fy));
                }
            }
        }
        match best {
            Some((y, fy)) => {
                x = y;
                fx = fy;
            }
            None => step *= 0.5,
        }
    }
    (x, fx)
}


#[cfg(test)]
mod platonia_tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn platonia_optimum_at_one_over_n() {
        for n in 2..=10 {
            let r = superrational_mixed(&catalog::platonia(n), &OptimizerConfig::default()).unwrap();
            assert_eq!(r.maximizers.len(), 1, "n = {n}");
            let m = &r.maximizers[0];
            let nf = n as f64;
            let expected = 1e6 / nf * (1.0 - 1.0 / nf).powi(n as i32 - 1);
            assert!((m.strategy[0] - 1.0 / nf).abs() < 1e-6, "n = {n}: {:?}", m.strategy);
            assert!(((m.value - expected) / expected).abs() < 1e-6);
            assert!(m.converged, "n = {n}: stationarity {}", m.stationarity);
        }
    }
}
