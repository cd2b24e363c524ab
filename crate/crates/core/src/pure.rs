//! Degree sequences, the pure diagrams `π(d)` they generate, the termwise
//! partial order on them, and the Herzog–Kühl functionals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::table::{BettiTable, Window};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("degree sequence is empty")]
    Empty,
    #[error("degree sequence {0:?} is not strictly increasing")]
    NotIncreasing(Vec<i64>),
}

/// A strictly increasing, nonempty sequence of degrees `d_0 < d_1 < ... < d_s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DegreeSequence(Vec<i64>);

impl DegreeSequence {
    pub fn new(degrees: Vec<i64>) -> Result<Self, SequenceError> {
        if degrees.is_empty() {
            return Err(SequenceError::Empty);
        }
        if degrees.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SequenceError::NotIncreasing(degrees));
        }
        Ok(DegreeSequence(degrees))
    }

    /// The sequence `(start, start + 1, ..., start + len - 1)`.
    pub fn consecutive(start: i64, len: usize) -> Self {
        DegreeSequence((0..len as i64).map(|i| start + i).collect())
    }

    pub fn degrees(&self) -> &[i64] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Index `s` of the last degree.
    pub fn last_col(&self) -> usize {
        self.0.len() - 1
    }

    /// Adds `shift` to every degree.
    pub fn shifted(&self, shift: i64) -> Self {
        DegreeSequence(self.0.iter().map(|d| d + shift).collect())
    }

    /// Whether `π(self)` has support inside `window`.
    pub fn fits(&self, window: &Window) -> bool {
        self.last_col() <= window.max_col && self.0.iter().enumerate().all(|(i, &d)| window.contains(i, d))
    }

    /// `∏_{k≠i} |d_k - d_i|` for every column `i`.
    pub fn products(&self) -> Vec<BigInt> {
        let d = &self.0;
        (0..d.len())
            .map(|i| {
                d.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != i)
                    .fold(BigInt::one(), |acc, (_, &dk)| acc * BigInt::from((dk - d[i]).abs()))
            })
            .collect()
    }
}

impl<'de> Deserialize<'de> for DegreeSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        DegreeSequence::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// Termwise order after padding both sequences with `∞`: `a ≤ b` iff `a` is at
/// least as long as `b` and `a_i ≤ b_i` on the first `len(b)` positions.
pub fn compare(a: &DegreeSequence, b: &DegreeSequence) -> Relation {
    fn le(a: &DegreeSequence, b: &DegreeSequence) -> bool {
        a.len() >= b.len() && a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
    }
    match (le(a, b), le(b, a)) {
        (true, true) => Relation::Equal,
        (true, false) => Relation::Less,
        (false, true) => Relation::Greater,
        (false, false) => Relation::Incomparable,
    }
}

impl Relation {
    pub fn to_ordering(self) -> Option<Ordering> {
        match self {
            Relation::Less => Some(Ordering::Less),
            Relation::Equal => Some(Ordering::Equal),
            Relation::Greater => Some(Ordering::Greater),
            Relation::Incomparable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureDiagram {
    pub sequence: DegreeSequence,
    pub table: BettiTable,
}

/// The entries `∏_{k≠i} 1/|d_k - d_i|` of `π(d)`, one per column.
pub fn pure_entries(d: &DegreeSequence) -> Vec<Rational> {
    d.products().into_iter().map(|p| Rational::new(BigInt::one(), p)).collect()
}

pub fn pure_diagram(d: &DegreeSequence) -> PureDiagram {
    let table = BettiTable::from_entries(pure_entries(d).into_iter().enumerate().map(|(i, v)| (i, d.0[i], v)))
        .expect("pure diagrams are nonzero");
    PureDiagram { sequence: d.clone(), table }
}

/// `π(d)` stored over a caller-chosen window that must contain its support.
pub fn pure_diagram_in(d: &DegreeSequence, window: Window) -> Option<BettiTable> {
    if !d.fits(&window) {
        return None;
    }
    let mut t = BettiTable::zeros(window);
    for (i, v) in pure_entries(d).into_iter().enumerate() {
        t.set(i, d.0[i], v).ok()?;
    }
    Some(t)
}

/// The least `α > 0` with `α·π(d)` integral, together with that integral table.
pub fn integer_normalize(p: &PureDiagram) -> (BigInt, BettiTable) {
    let alpha = p.table.nonzero().fold(BigInt::one(), |acc, (_, _, v)| acc.lcm(v.denom()));
    let scale = Rational::from_integer(alpha.clone());
    let table = p.table.add_scaled(&p.table, &(scale - Rational::one()));
    (alpha, table)
}

/// `Σ (-1)^i j^power β_{i,j}` over the table, with `0^0 = 1`.
pub fn hk_functional(t: &BettiTable, power: u32) -> Rational {
    t.nonzero()
        .map(|(i, j, v)| {
            let term = rational::pow_int(j, power) * v;
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Whether the first `s` Herzog–Kühl functionals (powers `0..s`) all vanish.
pub fn hk_satisfies(t: &BettiTable, s: u32) -> bool {
    (0..s).all(|p| hk_functional(t, p).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn seq(d: &[i64]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    #[test]
    fn pure_diagram_examples() {
        let p = pure_diagram(&seq(&[6]));
        assert_eq!(p.table.nonzero().count(), 1);
        assert_eq!(p.table.get(0, 6), int(1));

        let p = pure_diagram(&seq(&[6, 7, 8, 9]));
        let got: Vec<_> = (0..4).map(|i| p.table.get(i, 6 + i as i64)).collect();
        assert_eq!(got, vec![frac(1, 6), frac(1, 2), frac(1, 2), frac(1, 6)]);

        let p = pure_diagram(&seq(&[6, 8]));
        assert_eq!(p.table.get(0, 6), frac(1, 2));
        assert_eq!(p.table.get(1, 8), frac(1, 2));
        assert_eq!(p.table.nonzero().count(), 2);
    }

    #[test]
    fn rejects_bad_sequences() {
        assert_eq!(DegreeSequence::new(vec![]), Err(SequenceError::Empty));
        assert!(matches!(DegreeSequence::new(vec![3, 3]), Err(SequenceError::NotIncreasing(_))));
        assert!(matches!(DegreeSequence::new(vec![4, 2]), Err(SequenceError::NotIncreasing(_))));
    }

    #[test]
    fn normalization_examples() {
        let (a, t) = integer_normalize(&pure_diagram(&seq(&[0, 1, 2])));
        assert_eq!(a, BigInt::from(2));
        assert_eq!((t.get(0, 0), t.get(1, 1), t.get(2, 2)), (int(1), int(2), int(1)));

        let (a, t) = integer_normalize(&pure_diagram(&seq(&[6, 7, 9])));
        assert_eq!(a, BigInt::from(6));
        assert_eq!((t.get(0, 6), t.get(1, 7), t.get(2, 9)), (int(2), int(3), int(1)));

        let (a, t) = integer_normalize(&pure_diagram(&seq(&[6])));
        assert_eq!(a, BigInt::from(1));
        assert_eq!(t.get(0, 6), int(1));
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&seq(&[6, 7, 8]), &seq(&[6, 8])), Relation::Less);
        assert_eq!(compare(&seq(&[6, 8]), &seq(&[7, 8])), Relation::Less);
        assert_eq!(compare(&seq(&[6, 9]), &seq(&[7, 8])), Relation::Incomparable);
        assert_eq!(compare(&seq(&[7, 8]), &seq(&[6, 8])), Relation::Greater);
        assert_eq!(compare(&seq(&[6, 8]), &seq(&[6, 8])), Relation::Equal);
    }

    #[test]
    fn hk_examples() {
        let p = pure_diagram(&seq(&[0, 1, 2])).table;
        assert_eq!(hk_functional(&p, 0), int(0));
        assert_eq!(hk_functional(&p, 1), int(0));
        assert_eq!(hk_functional(&p, 2), int(1));
        assert!(hk_satisfies(&p, 2));
        assert!(!hk_satisfies(&p, 3));
        assert_eq!(hk_functional(&pure_diagram(&seq(&[6])).table, 0), int(1));
        let zero = BettiTable::zeros(Window::new(0, 3, 2).unwrap());
        assert!(hk_satisfies(&zero, 7));
    }

    mod prop {
        use super::*;
        use proptest::prelude::*;

        fn sequence() -> impl Strategy<Value = DegreeSequence> {
            (-5i64..5, proptest::collection::vec(1i64..4, 0..4)).prop_map(|(start, gaps)| {
                let mut d = vec![start];
                for g in gaps {
                    d.push(d.last().unwrap() + g);
                }
                DegreeSequence::new(d).unwrap()
            })
        }

        fn le(a: &DegreeSequence, b: &DegreeSequence) -> bool {
            matches!(compare(a, b), Relation::Less | Relation::Equal)
        }

        proptest! {
            #[test]
            fn entries_invert_products(d in sequence()) {
                let p = pure_diagram(&d);
                prop_assert_eq!(p.table.nonzero().count(), d.len());
                for (i, prod) in d.products().into_iter().enumerate() {
                    let v = p.table.get(i, d.degrees()[i]);
                    prop_assert!(v > Rational::zero());
                    prop_assert_eq!(v * Rational::from_integer(prod), Rational::one());
                }
            }

            #[test]
            fn normalization_is_minimal(d in sequence()) {
                let p = pure_diagram(&d);
                let (alpha, t) = integer_normalize(&p);
                prop_assert!(t.nonzero().all(|(_, _, v)| v.is_integer()));
                let a: u64 = alpha.try_into().unwrap();
                for beta in 1..a {
                    if a.is_multiple_of(beta) {
                        let b = Rational::from_integer(BigInt::from(beta));
                        prop_assert!(p.table.nonzero().any(|(_, _, v)| !(v * &b).is_integer()));
                    }
                }
            }

            #[test]
            fn compare_is_partial_order(a in sequence(), b in sequence(), c in sequence()) {
                prop_assert!(le(&a, &a));
                if le(&a, &b) && le(&b, &a) {
                    prop_assert_eq!(&a, &b);
                }
                if le(&a, &b) && le(&b, &c) {
                    prop_assert!(le(&a, &c));
                }
            }
        }
    }
}
