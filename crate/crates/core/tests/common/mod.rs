//! Oracles and fixtures shared by the integration tests. Nothing here calls
//! into the library's own linear algebra or homology code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use bsdecomp::monomial::{Monomial, MonomialIdeal};
use bsdecomp::{DegreeSequence, PolynomialQ, Rational};
use num_bigint::BigInt;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn seq(d: &[i64]) -> DegreeSequence {
    DegreeSequence::new(d.to_vec()).unwrap()
}

/// Polynomial from `(numerator, denominator)` coefficients, constant term first.
pub fn poly(c: &[(i64, i64)]) -> PolynomialQ {
    PolynomialQ::new(c.iter().map(|&(n, d)| q(n, d)).collect())
}

pub fn path_ideal() -> MonomialIdeal {
    let gens = [[1, 1, 0, 0, 0], [0, 1, 1, 0, 0], [0, 0, 1, 1, 0], [0, 0, 0, 1, 1]];
    MonomialIdeal::new(5, gens.iter().map(|g| Monomial::new(g.to_vec())).collect()).unwrap()
}

/// The six Betti polynomials of the path ideal, keyed by `(column, j - 2k)`.
pub fn expected_betti_polynomials() -> Vec<((usize, i64), PolynomialQ)> {
    vec![
        ((0, 0), poly(&[(1, 1), (11, 6), (1, 1), (1, 6)])),
        ((1, 1), poly(&[(0, 1), (1, 1), (3, 2), (1, 2)])),
        ((1, 2), poly(&[(0, 1), (1, 1)])),
        ((2, 2), poly(&[(0, 1), (-1, 2), (0, 1), (1, 2)])),
        ((2, 3), poly(&[(0, 1), (1, 1)])),
        ((3, 3), poly(&[(0, 1), (1, 3), (-1, 2), (1, 6)])),
    ]
}

/// Expected positive decomposition: offsets from `2k` and coefficient polynomial.
pub fn expected_positive_terms() -> Vec<(Vec<i64>, PolynomialQ)> {
    vec![
        (vec![0, 1, 2, 3], poly(&[(0, 1), (2, 1), (-3, 1), (1, 1)])),
        (vec![0, 1, 2], poly(&[(0, 1), (-3, 1), (3, 1)])),
        (vec![0, 1, 3], poly(&[(0, 1), (6, 1)])),
        (vec![0, 2], poly(&[(0, 1), (2, 1)])),
        (vec![0], poly(&[(1, 1)])),
    ]
}

pub fn expected_positive_chain() -> Vec<Vec<i64>> {
    vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4], vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![0, 2], vec![0], vec![1]]
}

pub fn alternate_chain() -> Vec<Vec<i64>> {
    vec![
        vec![0, 1, 2, 3],
        vec![0, 1, 2, 4],
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 2, 3],
        vec![1, 2, 3],
        vec![1, 2],
        vec![1],
    ]
}

/// Expected coefficients along the alternate chain, in chain order. The second
/// element carries no expected summand, so its coefficient is zero.
pub fn expected_alternate_coefficients() -> Vec<PolynomialQ> {
    vec![
        poly(&[(0, 1), (2, 1), (-3, 1), (1, 1)]),
        PolynomialQ::zero(),
        poly(&[(0, 1), (-3, 1), (3, 1)]),
        poly(&[(0, 1), (6, 1)]),
        poly(&[(6, 1), (6, 1)]),
        poly(&[(-4, 1), (-4, 1)]),
        poly(&[(1, 1), (2, 1)]),
        poly(&[(1, 1)]),
    ]
}

/// Pure diagram entry in column `i`, straight from the product formula.
pub fn pure_entry(d: &[i64], i: usize) -> Rational {
    let mut den = BigInt::from(1);
    for (k, &dk) in d.iter().enumerate() {
        if k != i {
            den *= BigInt::from((dk - d[i]).abs());
        }
    }
    Rational::new(BigInt::from(1), den)
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Rank over GF(2^61 - 1). Agrees with the rank over Q unless the prime
/// divides some torsion coefficient of the integer matrix.
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = powmod(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = mulmod(*x, inv);
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P - mulmod(f, y)) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn lcm_of(gens: &[Vec<u32>], mask: usize) -> Vec<u32> {
    let n = gens[0].len();
    let mut out = vec![0; n];
    for (g, e) in gens.iter().enumerate() {
        if mask >> g & 1 == 1 {
            for v in 0..n {
                out[v] = out[v].max(e[v]);
            }
        }
    }
    out
}

/// Graded Betti numbers `(column, degree) -> β` of the ideal from the Taylor
/// complex tensored with the field: at multidegree `b` the basis is every subset
/// with lcm exactly `b`, and a face survives in the boundary only if dropping a
/// generator keeps the lcm.
pub fn taylor_betti(gens: &[Vec<u32>]) -> BTreeMap<(usize, i64), u64> {
    let g = gens.len();
    let mut by_lcm: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for mask in 1..(1usize << g) {
        by_lcm.entry(lcm_of(gens, mask)).or_default().push(mask);
    }
    let mut out = BTreeMap::new();
    for (b, masks) in by_lcm {
        let degree: i64 = b.iter().map(|&e| e as i64).sum();
        let mut by_size: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for m in masks {
            by_size.entry(m.count_ones() as usize).or_default().push(m);
        }
        let boundary_rank = |size: usize| -> usize {
            let (Some(src), Some(dst)) = (by_size.get(&size), by_size.get(&(size - 1))) else { return 0 };
            let index: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let rows = src
                .iter()
                .map(|&m| {
                    let mut row = vec![0u64; dst.len()];
                    let mut sign = 0;
                    for bit in 0..g {
                        if m >> bit & 1 == 1 {
                            if let Some(&col) = index.get(&(m & !(1 << bit))) {
                                row[col] = if sign % 2 == 0 { 1 } else { P - 1 };
                            }
                            sign += 1;
                        }
                    }
                    row
                })
                .collect();
            rank_mod_p(rows)
        };
        for (&size, faces) in &by_size {
            let lower = if size > 1 { boundary_rank(size) } else { 0 };
            let upper = boundary_rank(size + 1);
            let beta = faces.len() - lower - upper;
            if beta > 0 {
                *out.entry((size - 1, degree)).or_insert(0) += beta as u64;
            }
        }
    }
    out
}

pub fn random_rational(rng: &mut impl Rng, max_num: i64, max_den: i64) -> Rational {
    q(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}
