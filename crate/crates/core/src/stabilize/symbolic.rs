use std::collections::{BTreeMap, HashSet};

use num_traits::Zero;
use rayon::prelude::*;

use super::{PolynomialQ, StabilizeError, SymbolicBettiTable};
use crate::decompose::{chain_basis_matrix, enumerate_maximal_chains, Chain, DecomposeError, Decomposition, Term};
use crate::linalg;
use crate::pure::DegreeSequence;
use crate::rational::Rational;
use crate::table::Window;

/// Index of the polynomial that is `≤` all others for every integer `k > threshold`.
///
/// Two polynomials are compared at infinity by the leading sign of their
/// difference; ties go to the lowest index. The threshold is one more than the
/// largest Cauchy-bound cutoff over all pairwise differences (0 if no
/// difference is a nonconstant polynomial).
pub fn eventual_min(polys: &[PolynomialQ]) -> (usize, i64) {
    assert!(!polys.is_empty(), "eventual_min needs at least one polynomial");
    let mut best = 0;
    for i in 1..polys.len() {
        if (&polys[i] - &polys[best]).eventual_sign() < 0 {
            best = i;
        }
    }
    let cutoff = (0..polys.len())
        .flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j)))
        .filter_map(|(i, j)| (&polys[i] - &polys[j]).sign_stable_after())
        .max();
    (best, cutoff.map_or(0, |t| (t + 1).max(0)))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TranslatedTerm {
    pub coefficient: PolynomialQ,
    /// Degree offsets `d`; at `k` the diagram is `π(d + r·k)`.
    pub offsets: DegreeSequence,
}

/// `Σ w_l(k) · π(d^l + r·k)`, valid for every integer `k ≥ certified_from`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslatedDecomposition {
    pub r: u32,
    /// Window in offset coordinates.
    pub window: Window,
    pub terms: Vec<TranslatedTerm>,
    pub certified_from: i64,
}

impl TranslatedDecomposition {
    pub fn evaluate(&self, k: i64) -> Decomposition {
        let shift = self.r as i64 * k;
        Decomposition {
            window: Window {
                min_row: self.window.min_row + shift,
                max_row: self.window.max_row + shift,
                max_col: self.window.max_col,
            },
            terms: self
                .terms
                .iter()
                .map(|t| Term { coefficient: t.coefficient.eval_int(k), sequence: t.offsets.shifted(shift) })
                .collect(),
        }
    }

    pub fn nonzero_terms(&self) -> impl Iterator<Item = &TranslatedTerm> {
        self.terms.iter().filter(|t| !t.coefficient.is_zero())
    }

    /// `Σ w_l · π(d^l)` as a polynomial identity in offset coordinates.
    pub fn reconstruct(&self) -> BTreeMap<(usize, i64), PolynomialQ> {
        let mut out: BTreeMap<(usize, i64), PolynomialQ> = BTreeMap::new();
        for t in &self.terms {
            for (i, v) in crate::pure::pure_entries(&t.offsets).into_iter().enumerate() {
                let e = out.entry((i, t.offsets.degrees()[i])).or_default();
                *e = &*e + &t.coefficient.scale(&v);
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

fn cutoff_from(p: &PolynomialQ) -> i64 {
    p.sign_stable_after().map_or(i64::MIN, |t| t + 1)
}

/// The decomposition algorithm over polynomial entries.
///
/// Each step reads the topmost nonzero offset of every column, takes
/// `η(k) = Q_I(k)` for the eventually smallest `Q_i = P_{i,d_i} · ∏_{p≠i}|d_i − d_p|`,
/// and subtracts `η·π(d)`. `certified_from` covers the fit, every crossing of
/// the `Q_i`, and the sign stability of every entry that stays nonzero.
pub fn symbolic_greedy_decompose(table: &SymbolicBettiTable) -> Result<TranslatedDecomposition, StabilizeError> {
    let window = table.offset_window().ok_or(DecomposeError::ZeroTable)?;
    let mut rest = table.entries.clone();
    let mut certified_from = table.valid_from;
    for p in rest.values() {
        certified_from = certified_from.max(cutoff_from(p));
    }
    let mut terms = Vec::new();
    while !rest.is_empty() {
        let last = rest.keys().map(|&(i, _)| i).max().expect("nonempty");
        let mut degrees = Vec::with_capacity(last + 1);
        for col in 0..=last {
            let top = rest
                .keys()
                .filter(|&&(i, _)| i == col)
                .map(|&(_, j)| j)
                .min()
                .ok_or(DecomposeError::GapInColumns { col, last })?;
            degrees.push(top);
        }
        let offsets = DegreeSequence::new(degrees).map_err(DecomposeError::from)?;
        let products: Vec<Rational> = offsets.products().into_iter().map(Rational::from_integer).collect();
        let q: Vec<PolynomialQ> =
            offsets.degrees().iter().enumerate().map(|(i, &d)| rest[&(i, d)].scale(&products[i])).collect();
        let (index, threshold) = eventual_min(&q);
        let eta = q[index].clone();
        certified_from = certified_from.max(threshold).max(cutoff_from(&eta));
        for (i, &d) in offsets.degrees().iter().enumerate() {
            let updated = &rest[&(i, d)] - &eta.scale(&products[i].recip());
            if updated.is_zero() {
                rest.remove(&(i, d));
            } else {
                certified_from = certified_from.max(cutoff_from(&updated));
                rest.insert((i, d), updated);
            }
        }
        terms.push(TranslatedTerm { coefficient: eta, offsets });
    }
    Ok(TranslatedDecomposition { r: table.r, window, terms, certified_from })
}

/// Expansion along a maximal chain of offset sequences. The basis matrix does
/// not depend on `k`, so each power of `k` is solved separately.
pub fn symbolic_chain_decompose(
    table: &SymbolicBettiTable,
    chain: &Chain,
) -> Result<TranslatedDecomposition, StabilizeError> {
    if !chain.is_maximal() {
        return Err(DecomposeError::ChainNotMaximal.into());
    }
    let window = chain.window();
    if table.entries.keys().any(|&(i, j)| !window.contains(i, j)) {
        let table_window = table.offset_window().unwrap_or(window);
        return Err(DecomposeError::WindowMismatch { table: table_window, chain: window }.into());
    }
    let degree = table.max_degree().unwrap_or(0);
    let rhs: Vec<Vec<Rational>> = (0..=degree)
        .map(|p| {
            let mut v = vec![Rational::zero(); window.size()];
            for (&(i, j), poly) in &table.entries {
                v[window.index(i, j).expect("checked above")] = poly.coefficient(p);
            }
            v
        })
        .collect();
    let solutions = linalg::solve_many(&chain_basis_matrix(chain), &rhs).map_err(DecomposeError::from)?;
    let terms = chain
        .elements()
        .iter()
        .enumerate()
        .map(|(l, d)| TranslatedTerm {
            coefficient: PolynomialQ::new(solutions.iter().map(|s| s[l].clone()).collect()),
            offsets: d.clone(),
        })
        .collect();
    Ok(TranslatedDecomposition { r: table.r, window, terms, certified_from: table.valid_from })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveFamily {
    /// Lowest-enumeration-order chain realizing the positive decomposition.
    pub chain: Chain,
    pub position: usize,
    pub decomposition: TranslatedDecomposition,
    /// Every nonzero coefficient is positive for all integer `k ≥ threshold`.
    pub threshold: i64,
    pub total_chains: usize,
    /// Chains whose nonzero coefficients are all eventually positive.
    pub qualifying_chains: usize,
    /// Qualifying chains grouped by their nonzero terms.
    pub distinct_decompositions: usize,
}

/// Searches the maximal chains of `window` for the translated family whose
/// coefficients are eventually positive. Zero coefficients carry no sign
/// constraint, so chains that differ only at zero-coefficient positions give the
/// same decomposition; they are counted once and the first one is returned.
pub fn positive_family_chain(table: &SymbolicBettiTable, window: Window) -> Result<PositiveFamily, StabilizeError> {
    let chains: Vec<Chain> = enumerate_maximal_chains(window).collect();
    let expansions: Vec<Result<TranslatedDecomposition, StabilizeError>> =
        chains.par_iter().map(|c| symbolic_chain_decompose(table, c)).collect();
    let mut qualifying = Vec::new();
    for (pos, result) in expansions.into_iter().enumerate() {
        let d = result?;
        if d.terms.iter().all(|t| t.coefficient.eventual_sign() >= 0) {
            qualifying.push((pos, d));
        }
    }
    let distinct: HashSet<Vec<TranslatedTerm>> =
        qualifying.iter().map(|(_, d)| d.nonzero_terms().cloned().collect()).collect();
    if distinct.len() != 1 {
        return Err(StabilizeError::AmbiguousOrMissing { qualifying: qualifying.len(), distinct: distinct.len() });
    }
    let qualifying_chains = qualifying.len();
    let (position, decomposition) = qualifying.swap_remove(0);
    let threshold = decomposition.nonzero_terms().map(|t| cutoff_from(&t.coefficient)).fold(table.valid_from, i64::max);
    Ok(PositiveFamily {
        chain: chains[position].clone(),
        position,
        decomposition,
        threshold,
        total_chains: chains.len(),
        qualifying_chains,
        distinct_decompositions: 1,
    })
}
