use num_traits::Signed;

use super::{DecomposeError, Decomposition, Term};
use crate::pure::{pure_entries, DegreeSequence};
use crate::rational::Rational;
use crate::table::BettiTable;

/// The positive decomposition: repeatedly peel off `η·π(d)` where `d` reads the
/// topmost nonzero degree of each column and `η` is the largest multiple that
/// keeps every entry nonnegative.
pub fn greedy_decompose(table: &BettiTable) -> Result<Decomposition, DecomposeError> {
    if let Some((col, degree, _)) = table.nonzero().find(|(_, _, v)| v.is_negative()) {
        return Err(DecomposeError::Negative { col, degree });
    }
    if table.is_zero() {
        return Err(DecomposeError::ZeroTable);
    }
    let mut rest = table.clone();
    let mut terms = Vec::new();
    while !rest.is_zero() {
        let last = rest.last_nonzero_col().expect("nonzero table");
        let mut degrees = Vec::with_capacity(last + 1);
        for col in 0..=last {
            let top = rest.top_degree(col).ok_or(DecomposeError::GapInColumns { col, last })?;
            degrees.push(top);
        }
        let sequence = DegreeSequence::new(degrees)?;
        let products = sequence.products();
        // η = min_i β_{i,d_i} · ∏_{p≠i} |d_p − d_i|
        let eta = sequence
            .degrees()
            .iter()
            .zip(&products)
            .enumerate()
            .map(|(col, (&d, p))| rest.get(col, d) * Rational::from_integer(p.clone()))
            .min()
            .expect("nonempty sequence");
        for (col, v) in pure_entries(&sequence).into_iter().enumerate() {
            let d = sequence.degrees()[col];
            let updated = rest.get(col, d) - v * &eta;
            debug_assert!(!updated.is_negative());
            rest.set(col, d, updated).expect("inside window");
        }
        terms.push(Term { coefficient: eta, sequence });
    }
    Ok(Decomposition { window: table.window(), terms })
}
