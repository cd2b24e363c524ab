//! Exact Gaussian elimination over the rationals.
//!
//! Matrices are row-major `Vec<Vec<Rational>>`. All routines are exact; the only
//! failure modes are structural (rank deficiency or inconsistency).

use num_traits::Zero;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NoSolution {
    /// Row `row` of the reduced system reads `0 = residual` with `residual != 0`.
    #[error("inconsistent system: reduced row {row} leaves residual {residual}")]
    Inconsistent { row: usize, residual: Rational },
    /// Fewer pivots than unknowns, so a solution would not be unique.
    #[error("matrix has rank {rank} but {unknowns} unknowns; the solution is not unique")]
    RankDeficient { rank: usize, unknowns: usize },
    #[error("right-hand side has length {rhs} but the matrix has {rows} rows")]
    Shape { rows: usize, rhs: usize },
}

struct Reduced {
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

/// Reduced row echelon form of the first `cols` columns; trailing columns (if any)
/// are carried along as augmented right-hand sides.
fn reduce(mut rows: Vec<Vec<Rational>>, cols: usize) -> Reduced {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Reduced { rows, pivots }
}

/// Rank of a rectangular rational matrix.
pub fn rank(matrix: &[Vec<Rational>]) -> usize {
    let cols = matrix.first().map_or(0, Vec::len);
    reduce(matrix.to_vec(), cols).pivots.len()
}

/// Solves `matrix * x = rhs`, requiring full column rank and consistency.
pub fn solve_exact(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, NoSolution> {
    let rhs_cols: Vec<Vec<Rational>> = vec![rhs.to_vec()];
    let mut sol = solve_many(matrix, &rhs_cols)?;
    Ok(sol.pop().unwrap_or_default())
}

/// Solves `matrix * x_p = rhs_p` for each right-hand side `rhs_p`, sharing the elimination.
pub fn solve_many(matrix: &[Vec<Rational>], rhs: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>, NoSolution> {
    let rows = matrix.len();
    let unknowns = matrix.first().map_or(0, Vec::len);
    if let Some(bad) = rhs.iter().find(|b| b.len() != rows) {
        return Err(NoSolution::Shape { rows, rhs: bad.len() });
    }
    let augmented: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let reduced = reduce(augmented, unknowns);
    let rank = reduced.pivots.len();
    for (i, row) in reduced.rows.iter().enumerate().skip(rank) {
        if let Some(residual) = row[unknowns..].iter().find(|v| !v.is_zero()) {
            return Err(NoSolution::Inconsistent { row: i, residual: residual.clone() });
        }
    }
    if rank < unknowns {
        return Err(NoSolution::RankDeficient { rank, unknowns });
    }
    Ok((0..rhs.len()).map(|p| (0..unknowns).map(|r| reduced.rows[r][unknowns + p].clone()).collect()).collect())
}

/// Multiplies a matrix by a vector.
pub fn mul_vec(matrix: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    matrix.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}
