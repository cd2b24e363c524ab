use std::collections::{BTreeMap, BTreeSet};

use super::{Instability, PolynomialQ, StabilizeError};
use crate::rational::Rational;
use crate::table::{BettiTable, Window};

/// Betti tables of a power family as polynomials in `k`:
/// `β_{i, r·k + j}(I^k) = P_{i,j}(k)`, keyed by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicBettiTable {
    pub r: u32,
    pub entries: BTreeMap<(usize, i64), PolynomialQ>,
    pub valid_from: i64,
}

/// Nonzero positions of `table` with degrees shifted down by `shift`.
pub fn shifted_shape(table: &BettiTable, shift: i64) -> BTreeSet<(usize, i64)> {
    table.nonzero().map(|(i, d, _)| (i, d - shift)).collect()
}

impl SymbolicBettiTable {
    pub fn new(r: u32, entries: BTreeMap<(usize, i64), PolynomialQ>, valid_from: i64) -> Self {
        let entries = entries.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        SymbolicBettiTable { r, entries, valid_from }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn shape(&self) -> BTreeSet<(usize, i64)> {
        self.entries.keys().copied().collect()
    }

    pub fn get(&self, col: usize, offset: i64) -> PolynomialQ {
        self.entries.get(&(col, offset)).cloned().unwrap_or_default()
    }

    /// Window in offset coordinates: rows `j − i` of the support.
    pub fn offset_window(&self) -> Option<Window> {
        let mut rows = self.entries.keys().map(|&(i, j)| j - i as i64);
        let first = rows.next()?;
        let (min_row, max_row) = rows.fold((first, first), |(lo, hi), r| (lo.min(r), hi.max(r)));
        let max_col = self.entries.keys().map(|&(i, _)| i).max()?;
        Some(Window { min_row, max_row, max_col })
    }

    /// The numeric table at `k` (the zero table maps to an empty 1×1 window at `r·k`).
    pub fn evaluate(&self, k: i64) -> BettiTable {
        let shift = self.r as i64 * k;
        BettiTable::from_entries(self.entries.iter().map(|(&(i, j), p)| (i, j + shift, p.eval_int(k))))
            .unwrap_or_else(|| BettiTable::zeros(Window { min_row: shift, max_row: shift, max_col: 0 }))
    }

    /// Largest polynomial degree among the entries.
    pub fn max_degree(&self) -> Option<usize> {
        self.entries.values().filter_map(PolynomialQ::degree).max()
    }
}

/// Fits every support position with the degree `≤ degree_bound` Newton
/// interpolant through the first `degree_bound + 1` samples and checks it on
/// every remaining sample. `tables` must hold consecutive `k`.
pub fn fit_family(
    tables: &BTreeMap<i64, BettiTable>,
    r: u32,
    degree_bound: usize,
) -> Result<SymbolicBettiTable, StabilizeError> {
    let need = degree_bound + 2;
    if tables.len() < need {
        return Err(StabilizeError::InsufficientSamples { have: tables.len(), need });
    }
    let ks: Vec<i64> = tables.keys().copied().collect();
    if let Some(w) = ks.windows(2).find(|w| w[1] != w[0] + 1) {
        return Err(StabilizeError::NonConsecutive { after: w[0], next: w[1] });
    }
    let first_k = ks[0];
    let shift = |k: i64| r as i64 * k;
    let shape = shifted_shape(&tables[&first_k], shift(first_k));

    for (&k, table) in tables {
        let other = shifted_shape(table, shift(k));
        if let Some(&(col, offset)) = shape.symmetric_difference(&other).next() {
            return Err(StabilizeError::NotStabilized { k, col, offset, reason: Instability::ShapeChange });
        }
    }

    let mut entries = BTreeMap::new();
    for &(col, offset) in &shape {
        let samples: Vec<Rational> = ks.iter().map(|&k| tables[&k].get(col, offset + shift(k))).collect();
        let poly = PolynomialQ::interpolate(first_k, &samples[..=degree_bound]);
        for (&k, sample) in ks.iter().zip(&samples).skip(degree_bound + 1) {
            if &poly.eval_int(k) != sample {
                return Err(StabilizeError::NotStabilized { k, col, offset, reason: Instability::HoldoutMismatch });
            }
        }
        if poly.eventual_sign() < 0 {
            return Err(StabilizeError::NotStabilized {
                k: first_k,
                col,
                offset,
                reason: Instability::NegativeLeading,
            });
        }
        entries.insert((col, offset), poly);
    }
    Ok(SymbolicBettiTable::new(r, entries, first_k))
}

/// Column sums `Σ_j P_{i,j}` for columns `0..=max_col` (empty for the zero table).
pub fn total_betti_polynomials(table: &SymbolicBettiTable) -> Vec<PolynomialQ> {
    let cols = table.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
    let mut out = vec![PolynomialQ::zero(); cols];
    for (&(i, _), p) in &table.entries {
        out[i] = &out[i] + p;
    }
    out
}
