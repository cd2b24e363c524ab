//! Monomial ideals, their powers, and exact graded Betti tables computed from
//! the reduced homology of upper-Koszul simplicial complexes.

mod betti;
mod complex;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use betti::{betti_table, multigraded_betti};
pub use complex::{reduced_homology_dims, upper_koszul_complex, SimplicialComplex};
pub use parse::{parse_ideal_json, parse_monomial, IdealJson};

/// Face enumeration is exponential in the number of variables.
pub const MAX_VARS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonomialError {
    #[error("monomial has {found} variables, expected {expected}")]
    VariableCount { expected: usize, found: usize },
    #[error("{0} variables exceeds the supported maximum of {MAX_VARS}")]
    TooManyVariables(usize),
    #[error("the ideal needs at least one variable")]
    NoVariables,
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("the zero ideal has no Betti table")]
    ZeroIdeal,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("variable index x{index} out of range 1..={num_vars}")]
    IndexOutOfRange { index: usize, num_vars: usize },
    #[error("invalid ideal JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Bitmask of variables with positive exponent.
    pub fn support_mask(&self) -> u32 {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | (1 << i))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
            .collect();
        if factors.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&factors.join("*"))
        }
    }
}

/// A monomial ideal given by its minimal generators in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    num_vars: usize,
    generators: Vec<Monomial>,
}

/// Keeps the divisibility-minimal monomials, deduplicated and sorted.
pub fn minimalize(num_vars: usize, gens: Vec<Monomial>) -> Result<MonomialIdeal, MonomialError> {
    if num_vars == 0 {
        return Err(MonomialError::NoVariables);
    }
    if num_vars > MAX_VARS {
        return Err(MonomialError::TooManyVariables(num_vars));
    }
    if let Some(bad) = gens.iter().find(|g| g.num_vars() != num_vars) {
        return Err(MonomialError::VariableCount { expected: num_vars, found: bad.num_vars() });
    }
    // Increasing degree order: a divisor always comes before its multiples.
    let mut sorted: Vec<Monomial> = gens.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    sorted.sort_by_key(Monomial::degree);
    let mut kept: Vec<Monomial> = Vec::new();
    for g in sorted {
        if !kept.iter().any(|h| h.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    Ok(MonomialIdeal { num_vars, generators: kept })
}

impl MonomialIdeal {
    pub fn new(num_vars: usize, gens: Vec<Monomial>) -> Result<Self, MonomialError> {
        minimalize(num_vars, gens)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// `I^k`, minimalized.
    pub fn power(&self, k: u32) -> Result<MonomialIdeal, MonomialError> {
        if k == 0 {
            return Err(MonomialError::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self);
        }
        Ok(acc)
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let prods: Vec<Monomial> =
            self.generators.iter().flat_map(|a| other.generators.iter().map(move |b| a.mul(b))).collect();
        minimalize(self.num_vars, prods).expect("same variable count")
    }

    /// The common degree of all minimal generators, if there is one.
    pub fn is_equigenerated(&self) -> Option<u32> {
        let first = self.generators.first()?.degree();
        self.generators.iter().all(|g| g.degree() == first).then_some(first)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).min()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// The lcms of all nonempty subsets of the minimal generators.
pub fn lcm_closure(ideal: &MonomialIdeal) -> BTreeSet<Monomial> {
    let mut closure: BTreeSet<Monomial> = BTreeSet::new();
    for g in ideal.generators() {
        let joins: Vec<Monomial> = closure.iter().map(|m| m.lcm(g)).collect();
        closure.extend(joins);
        closure.insert(g.clone());
    }
    closure
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    pub(crate) fn path_ideal() -> MonomialIdeal {
        let gens = ["x1*x2", "x2*x3", "x3*x4", "x4*x5"].iter().map(|s| parse_monomial(s, 5).unwrap()).collect();
        MonomialIdeal::new(5, gens).unwrap()
    }

    #[test]
    fn minimalize_examples() {
        let i = minimalize(2, vec![mono(&[1, 0]), mono(&[1, 1])]).unwrap();
        assert_eq!(i.generators(), &[mono(&[1, 0])]);
        let i = minimalize(3, vec![mono(&[0, 1, 1]), mono(&[1, 1, 0])]).unwrap();
        assert_eq!(i.generators().len(), 2);
        assert_eq!(i.generators()[0], mono(&[0, 1, 1]));
        let i = minimalize(1, vec![mono(&[2]), mono(&[2])]).unwrap();
        assert_eq!(i.generators(), &[mono(&[2])]);
        let z = minimalize(3, vec![]).unwrap();
        assert!(z.is_zero());
        assert!(matches!(minimalize(2, vec![mono(&[1])]), Err(MonomialError::VariableCount { .. })));
        assert!(matches!(minimalize(17, vec![]), Err(MonomialError::TooManyVariables(17))));
    }

    #[test]
    fn powers_of_path_ideal() {
        let i = path_ideal();
        assert_eq!(i.power(1).unwrap(), i);
        assert_eq!(i.power(3).unwrap().generators().len(), 20);
        assert_eq!(i.power(5).unwrap().generators().len(), 56);
        assert_eq!(i.power(0), Err(MonomialError::ZeroPower));
    }

    #[test]
    fn equigeneration() {
        assert_eq!(path_ideal().is_equigenerated(), Some(2));
        let mixed = MonomialIdeal::new(2, vec![mono(&[1, 0]), mono(&[0, 2])]).unwrap();
        assert_eq!(mixed.is_equigenerated(), None);
        let x1 = MonomialIdeal::new(1, vec![mono(&[1])]).unwrap();
        assert_eq!(x1.is_equigenerated(), Some(1));
        for k in 1..=6 {
            assert_eq!(path_ideal().power(k).unwrap().is_equigenerated(), Some(2 * k));
        }
    }

    #[test]
    fn power_generators_factor() {
        let i = path_ideal();
        let (a, b) = (2, 3);
        let pa = i.power(a).unwrap();
        let pb = i.power(b).unwrap();
        for g in i.power(a + b).unwrap().generators() {
            assert!(pa.generators().iter().any(|x| { pb.generators().iter().any(|y| &x.mul(y) == g) }));
        }
    }

    #[test]
    fn lcm_closure_examples() {
        let i = MonomialIdeal::new(3, vec![mono(&[1, 1, 0]), mono(&[0, 1, 1])]).unwrap();
        let c: Vec<_> = lcm_closure(&i).into_iter().collect();
        assert_eq!(c, vec![mono(&[0, 1, 1]), mono(&[1, 1, 0]), mono(&[1, 1, 1])]);

        let i = MonomialIdeal::new(3, vec![mono(&[1, 0, 0]), mono(&[0, 1, 0]), mono(&[0, 0, 1])]).unwrap();
        let c = lcm_closure(&i);
        assert_eq!(c.len(), 7);
        assert!(c.iter().all(|m| m.exponents().iter().all(|&e| e <= 1) && m.degree() > 0));
    }

    #[test]
    fn lcm_closure_matches_subset_enumeration() {
        let i = path_ideal();
        let gens = i.generators();
        let mut brute = BTreeSet::new();
        for mask in 1u32..(1 << gens.len()) {
            let mut m = Monomial::one(5);
            for (b, g) in gens.iter().enumerate() {
                if mask & (1 << b) != 0 {
                    m = m.lcm(g);
                }
            }
            brute.insert(m);
        }
        assert_eq!(lcm_closure(&i), brute);
        assert_eq!(brute.len(), 11);
    }

    #[test]
    fn display() {
        assert_eq!(path_ideal().to_string(), "(x4*x5, x3*x4, x2*x3, x1*x2)");
        assert_eq!(Monomial::one(3).to_string(), "1");
        assert_eq!(mono(&[0, 3, 1]).to_string(), "x2^3*x3");
    }
}
