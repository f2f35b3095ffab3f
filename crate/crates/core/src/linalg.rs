//! Exact Gaussian elimination over the rationals.

use num_traits::Zero;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LinearSolution {
    Unique(Vec<Rational>),
    /// Consistent with a solution set of dimension `nvars − rank`.
    Underdetermined { rank: usize },
    Inconsistent,
}

/// Solves `rows · x = rhs` for `nvars` unknowns.
pub(crate) fn solve(rows: &[Vec<Rational>], rhs: &[Rational], nvars: usize) -> LinearSolution {
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..nvars {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    if m[rank..].iter().any(|row| !row[nvars].is_zero()) {
        return LinearSolution::Inconsistent;
    }
    if rank < nvars {
        return LinearSolution::Underdetermined { rank };
    }
    let mut x = vec![Rational::zero(); nvars];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][nvars].clone();
    }
    LinearSolution::Unique(x)
}
