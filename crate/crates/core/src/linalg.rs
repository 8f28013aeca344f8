//! Exact Gaussian elimination on augmented systems `A x = b`.

use num_traits::{One, Zero};

use crate::rational::Q;

/// Reduced row echelon form of an augmented system. Each row is
/// `[a_1, .., a_D, b]` meaning `sum a_j x_j = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<Q>>,
    /// Pivot column of each row.
    pub pivots: Vec<usize>,
    /// `false` when the system has no solution.
    pub consistent: bool,
}

/// Row-reduces `rows` choosing pivot columns in the order `column_order`
/// (each column is tried once, in order). Zero rows are dropped.
pub fn echelon(rows: &[Vec<Q>], ncols: usize, column_order: &[usize]) -> Echelon {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in column_order {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..=ncols {
                    let delta = &factor * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let consistent = m[r..].iter().all(|row| row[ncols].is_zero());
    m.truncate(r);
    Echelon {
        rows: m,
        pivots,
        consistent,
    }
}

/// Row-reduces with pivots taken left to right.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> Echelon {
    let order: Vec<usize> = (0..ncols).collect();
    echelon(rows, ncols, &order)
}

/// Rank of the coefficient part of an augmented system.
pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    let coeffs: Vec<Vec<Q>> = rows
        .iter()
        .map(|r| {
            let mut v = r[..ncols].to_vec();
            v.push(Q::zero());
            v
        })
        .collect();
    rref(&coeffs, ncols).rows.len()
}

/// Solves a square nonsingular system; `None` if singular.
pub fn solve_square(rows: &[Vec<Q>], ncols: usize) -> Option<Vec<Q>> {
    let e = rref(rows, ncols);
    if !e.consistent || e.rows.len() != ncols {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        debug_assert!(row[p].is_one());
        x[p] = row[ncols].clone();
    }
    Some(x)
}
