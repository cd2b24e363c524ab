//! Exact graded Betti tables of monomial ideals and their powers, Boij–Söderberg
//! decompositions of those tables, and detection of the polynomial-in-`k`
//! stabilization of the decompositions of `I^k`.
//!
//! Everything is computed over the rationals with arbitrary-precision integers.
//! There is no floating point anywhere in the pipeline.

pub mod cli;
pub mod decompose;
pub mod linalg;
pub mod monomial;
pub mod pure;
pub mod rational;
pub mod stabilize;
pub mod table;

pub use decompose::{
    chain_decompose, coefficient_column_formula, enumerate_maximal_chains, greedy_decompose, verify, Chain,
    DecomposeError, Decomposition, Term,
};
pub use linalg::{rank, solve_exact, NoSolution};
pub use monomial::{
    betti_table, lcm_closure, minimalize, parse_monomial, reduced_homology_dims, upper_koszul_complex, Monomial,
    MonomialError, MonomialIdeal, SimplicialComplex,
};
pub use pure::{
    compare, hk_functional, hk_satisfies, integer_normalize, pure_diagram, DegreeSequence, PureDiagram, Relation,
    SequenceError,
};
pub use rational::Rational;
pub use stabilize::{
    detect_stabilization, eventual_min, fit_family, positive_family_chain, symbolic_chain_decompose,
    symbolic_greedy_decompose, total_betti_polynomials, PolynomialQ, StabilizationReport, StabilizeError,
    SymbolicBettiTable, TranslatedDecomposition,
};
pub use table::{BettiTable, TableError, Window};
