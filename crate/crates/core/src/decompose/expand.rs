use num_bigint::BigInt;

use super::{Chain, DecomposeError, Decomposition, Term};
use crate::linalg;
use crate::pure::{pure_diagram_in, DegreeSequence};
use crate::rational::Rational;
use crate::table::BettiTable;

/// Column `j` is `π(chain[j])` flattened over the chain window.
pub fn chain_basis_matrix(chain: &Chain) -> Vec<Vec<Rational>> {
    let window = chain.window();
    let columns: Vec<BettiTable> =
        chain.elements().iter().map(|d| pure_diagram_in(d, window).expect("chain elements fit the window")).collect();
    (0..window.size()).map(|row| columns.iter().map(|c| c.flat()[row].clone()).collect()).collect()
}

/// Coordinates of `table` in the basis given by a maximal chain. Every chain
/// position is reported, zero coefficients included.
pub fn chain_decompose(table: &BettiTable, chain: &Chain) -> Result<Decomposition, DecomposeError> {
    if !chain.is_maximal() {
        return Err(DecomposeError::ChainNotMaximal);
    }
    let window = chain.window();
    let embedded =
        table.embed(window).map_err(|_| DecomposeError::WindowMismatch { table: table.window(), chain: window })?;
    let coefficients = linalg::solve_exact(&chain_basis_matrix(chain), embedded.flat())?;
    Ok(Decomposition {
        window,
        terms: coefficients
            .into_iter()
            .zip(chain.elements())
            .map(|(coefficient, d)| Term { coefficient, sequence: d.clone() })
            .collect(),
    })
}

/// The column `c` where `a` and `b` differ, if they have equal length and differ nowhere else.
fn single_column_difference(a: &DegreeSequence, b: &DegreeSequence) -> Option<usize> {
    if a.len() != b.len() {
        return None;
    }
    let mut diffs = a.degrees().iter().zip(b.degrees()).enumerate().filter(|(_, (x, y))| x != y);
    let (c, _) = diffs.next()?;
    diffs.next().is_none().then_some(c)
}

/// Closed-form coefficient of `chain[index]` when both neighbours differ from it
/// in the same single column `c`: `β_{c,d_c} · ∏_{p≠c} |d_c − d_p|`.
/// Returns `None` when the formula does not apply.
pub fn coefficient_column_formula(table: &BettiTable, chain: &Chain, index: usize) -> Option<Rational> {
    if index == 0 || index + 1 >= chain.len() {
        return None;
    }
    let elements = chain.elements();
    let middle = &elements[index];
    let c = single_column_difference(&elements[index - 1], middle)?;
    if single_column_difference(middle, &elements[index + 1])? != c {
        return None;
    }
    let d = middle.degrees();
    let product = d
        .iter()
        .enumerate()
        .filter(|&(p, _)| p != c)
        .fold(BigInt::from(1), |acc, (_, &dp)| acc * BigInt::from((d[c] - dp).abs()));
    Some(table.get(c, d[c]) * Rational::from_integer(product))
}
