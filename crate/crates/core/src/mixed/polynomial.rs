use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Result;
use crate::game::Game;
use crate::rational::{to_f64, Rational};

/// The diagonal expected payoffs of a common-action game collected by
/// monomial: `Eπ_i(σ,…,σ) = Σ_c coef_i(c) Π_x σ_x^{c_x}` where `c` ranges over
/// action-count vectors summing to `n`.
#[derive(Debug, Clone)]
pub struct DiagonalPolynomial {
    dim: usize,
    players: usize,
    exponents: Vec<Vec<u32>>,
    coeffs: Vec<Vec<Rational>>,
    coeffs_f64: Vec<Vec<f64>>,
}

impl DiagonalPolynomial {
    pub fn new(game: &Game) -> Result<Self> {
        game.require_common_actions()?;
        let n = game.players();
        let dim = game.actions(0).len();
        let mut acc: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
        for (k, profile) in game.profiles().enumerate() {
            let mut counts = vec![0u32; dim];
            for &a in &profile {
                counts[a] += 1;
            }
            let entry = acc
                .entry(counts)
                .or_insert_with(|| vec![Rational::zero(); n]);
            for (i, c) in entry.iter_mut().enumerate() {
                *c += game.payoff_by_index(k, i);
            }
        }
        let (exponents, coeffs): (Vec<_>, Vec<_>) = acc.into_iter().unzip();
        let coeffs_f64 = coeffs
            .iter()
            .map(|v: &Vec<Rational>| v.iter().map(to_f64).collect())
            .collect();
        Ok(DiagonalPolynomial {
            dim,
            players: n,
            exponents,
            coeffs,
            coeffs_f64,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn num_monomials(&self) -> usize {
        self.exponents.len()
    }

    pub fn eval(&self, player: usize, x: &[f64]) -> f64 {
        self.exponents
            .iter()
            .zip(&self.coeffs_f64)
            .map(|(e, c)| c[player] * monomial(e, x))
            .sum()
    }

    pub fn eval_exact(&self, player: usize, x: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (e, c) in self.exponents.iter().zip(&self.coeffs) {
            let mut term = c[player].clone();
            for (xk, &ek) in x.iter().zip(e) {
                for _ in 0..ek {
                    term *= xk;
                }
            }
            total += term;
        }
        total
    }

    /// Gradient with respect to the ambient coordinates of `x`.
    pub fn gradient(&self, player: usize, x: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|g| *g = 0.0);
        for (e, c) in self.exponents.iter().zip(&self.coeffs_f64) {
            let coef = c[player];
            if coef == 0.0 {
                continue;
            }
            for d in 0..self.dim {
                if e[d] == 0 {
                    continue;
                }
                let mut term = coef * e[d] as f64;
                for (k, (&xk, &ek)) in x.iter().zip(e).enumerate() {
                    let power = if k == d { ek - 1 } else { ek };
                    term *= xk.powi(power as i32);
                }
                out[d] += term;
            }
        }
    }
}

fn monomial(e: &[u32], x: &[f64]) -> f64 {
    e.iter()
        .zip(x)
        .map(|(&ek, &xk)| if ek == 0 { 1.0 } else { xk.powi(ek as i32) })
        .product()
}
