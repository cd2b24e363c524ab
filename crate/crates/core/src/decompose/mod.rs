//! Boij–Söderberg decompositions: the greedy positive decomposition, maximal
//! chains of pure diagrams in a window, and expansion of a table in the basis
//! given by a maximal chain.

mod chains;
mod expand;
mod greedy;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chains::{covers, enumerate_maximal_chains, random_maximal_chain, Chain, ChainError, MaximalChains};
pub use expand::{chain_basis_matrix, chain_decompose, coefficient_column_formula};
pub use greedy::greedy_decompose;

use crate::linalg::NoSolution;
use crate::pure::{pure_entries, DegreeSequence, SequenceError};
use crate::rational::{self, Rational};
use crate::table::{BettiTable, TableError, Window};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecomposeError {
    #[error("table has a negative entry at (column {col}, degree {degree})")]
    Negative { col: usize, degree: i64 },
    #[error("table is zero")]
    ZeroTable,
    #[error("column {col} is empty but column {last} is not; no degree sequence is defined")]
    GapInColumns { col: usize, last: usize },
    #[error("not decomposable: {0}")]
    NotIncreasing(#[from] SequenceError),
    #[error("chain is not maximal for its window")]
    ChainNotMaximal,
    #[error("table support ({table}) does not fit the chain window ({chain})")]
    WindowMismatch { table: Window, chain: Window },
    #[error("no solution: {0}")]
    NoSolution(#[from] NoSolution),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: Rational,
    pub sequence: DegreeSequence,
}

/// `Σ coefficient · π(sequence)` over a source window.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub window: Window,
    pub terms: Vec<Term>,
}

impl Decomposition {
    /// Terms with nonzero coefficient, in order.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| !t.coefficient.is_zero())
    }

    pub fn coefficients(&self) -> Vec<Rational> {
        self.terms.iter().map(|t| t.coefficient.clone()).collect()
    }

    /// `Σ coefficient · π(sequence)` stored over the source window (grown if a term escapes it).
    pub fn reconstruct(&self) -> BettiTable {
        let mut window = self.window;
        for t in &self.terms {
            let d = t.sequence.degrees();
            for (i, &deg) in d.iter().enumerate() {
                let row = deg - i as i64;
                window = window.union(&Window { min_row: row, max_row: row, max_col: i });
            }
        }
        let mut out = BettiTable::zeros(window);
        for t in &self.terms {
            for (i, v) in pure_entries(&t.sequence).into_iter().enumerate() {
                let deg = t.sequence.degrees()[i];
                let cur = out.get(i, deg);
                out.set(i, deg, cur + v * &t.coefficient).expect("window grown to fit");
            }
        }
        out
    }

    pub fn to_json(&self) -> DecompositionJson {
        DecompositionJson {
            window: [self.window.min_row, self.window.max_row, self.window.max_col as i64],
            terms: self
                .terms
                .iter()
                .map(|t| TermJson { degrees: t.sequence.clone(), coefficient: t.coefficient.clone() })
                .collect(),
        }
    }
}

/// Exact check that the decomposition sums to `table`.
pub fn verify(decomposition: &Decomposition, table: &BettiTable) -> bool {
    decomposition.reconstruct().same_entries(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub degrees: DegreeSequence,
    #[serde(with = "rational::serde_str")]
    pub coefficient: Rational,
}

/// `{"window":[M,N,C], "terms":[{"degrees":[...], "coefficient":"p/q"}, ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub window: [i64; 3],
    pub terms: Vec<TermJson>,
}

impl DecompositionJson {
    pub fn to_decomposition(&self) -> Result<Decomposition, TableError> {
        let [m, n, c] = self.window;
        if c < 0 {
            return Err(TableError::Parse { line: 0, message: "negative column cap".into() });
        }
        Ok(Decomposition {
            window: Window::new(m, n, c as usize)?,
            terms: self
                .terms
                .iter()
                .map(|t| Term { coefficient: t.coefficient.clone(), sequence: t.degrees.clone() })
                .collect(),
        })
    }
}
