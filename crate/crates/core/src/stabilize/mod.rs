//! Stabilization of decompositions across the power family `{I^k}`: exact
//! polynomial fits of the Betti numbers, the decomposition algorithm run over
//! polynomial entries, expansion along translated maximal chains, and a
//! report that rechecks every claim numerically.

mod fit;
mod poly;
mod report;
mod symbolic;

use thiserror::Error;

pub use fit::{fit_family, shifted_shape, total_betti_polynomials, SymbolicBettiTable};
pub use poly::{PolynomialJson, PolynomialQ};
pub use report::{detect_stabilization, StabilizationReport, StabilizationReportJson};
pub use symbolic::{
    eventual_min, positive_family_chain, symbolic_chain_decompose, symbolic_greedy_decompose, PositiveFamily,
    TranslatedDecomposition, TranslatedTerm,
};

use crate::decompose::DecomposeError;
use crate::monomial::MonomialError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instability {
    /// The shifted support differs from the first sample.
    ShapeChange,
    /// The interpolant misses a held-out sample.
    HoldoutMismatch,
    /// The fit would eventually be negative.
    NegativeLeading,
}

impl std::fmt::Display for Instability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Instability::ShapeChange => "the support shape changes here",
            Instability::HoldoutMismatch => "the fitted polynomial misses this sample",
            Instability::NegativeLeading => "the fitted polynomial is eventually negative",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StabilizeError {
    #[error("not stabilized at k = {k}, position (column {col}, offset {offset}): {reason}")]
    NotStabilized { k: i64, col: usize, offset: i64, reason: Instability },
    #[error("{have} samples supplied but at least {need} are needed")]
    InsufficientSamples { have: usize, need: usize },
    #[error("sample k values are not consecutive ({after} is followed by {next})")]
    NonConsecutive { after: i64, next: i64 },
    #[error("the ideal is not generated in a single degree")]
    NotEquigenerated,
    #[error("symbolic decomposition failed: {0}")]
    Decompose(#[from] DecomposeError),
    #[error("{qualifying} chains have eventually nonnegative coefficients, giving {distinct} distinct decompositions; expected exactly one")]
    AmbiguousOrMissing { qualifying: usize, distinct: usize },
    #[error(transparent)]
    Monomial(#[from] MonomialError),
    #[error("numeric recheck failed at k = {k}: {what}")]
    Inconsistent { k: i64, what: String },
}
