mod common;

use std::collections::{BTreeMap, BTreeSet};

use bsdecomp::decompose::{chain_basis_matrix, enumerate_maximal_chains, random_maximal_chain, DecompositionJson};
use bsdecomp::monomial::{betti_table, parse_ideal_json, IdealJson};
use bsdecomp::pure::pure_diagram_in;
use bsdecomp::stabilize::{fit_family, positive_family_chain, symbolic_chain_decompose, symbolic_greedy_decompose};
use bsdecomp::{chain_decompose, greedy_decompose, rank, BettiTable, Chain, PolynomialQ, Rational, Window};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sequences_in(w: Window) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<i64>> = vec![vec![]];
    while let Some(prefix) = stack.pop() {
        let i = prefix.len() as i64;
        if i as usize > w.max_col {
            continue;
        }
        let lo = prefix.last().map_or(w.min_row, |&x| (x + 1).max(w.min_row + i));
        for next in lo..=w.max_row + i {
            let mut d = prefix.clone();
            d.push(next);
            out.push(d.clone());
            stack.push(d);
        }
    }
    out
}

/// `a ≤ b` termwise after padding both with infinity.
fn below(a: &[i64], b: &[i64]) -> bool {
    a.len() >= b.len() && b.iter().zip(a).all(|(y, x)| x <= y)
}

/// Maximal chains of the window poset from its Hasse diagram, by brute force.
fn brute_force_chains(w: Window) -> BTreeSet<Vec<Vec<i64>>> {
    let all = sequences_in(w);
    let lt = |a: &Vec<i64>, b: &Vec<i64>| a != b && below(a, b);
    let covers = |a: &Vec<i64>| -> Vec<Vec<i64>> {
        all.iter().filter(|b| lt(a, b) && !all.iter().any(|c| lt(a, c) && lt(c, b))).cloned().collect()
    };
    let bottom: Vec<i64> = (0..=w.max_col as i64).map(|i| w.min_row + i).collect();
    let mut done = BTreeSet::new();
    let mut stack = vec![vec![bottom]];
    while let Some(path) = stack.pop() {
        let next = covers(path.last().unwrap());
        for n in &next {
            let mut p = path.clone();
            p.push(n.clone());
            stack.push(p);
        }
        if next.is_empty() {
            done.insert(path);
        }
    }
    done
}

#[test]
fn cover_relation_matches_hasse_diagram() {
    for (m, n, c) in [(0, 0, 2), (0, 1, 1), (0, 1, 2), (0, 1, 3), (0, 2, 2), (-1, 1, 2), (2, 4, 1), (0, 3, 1)] {
        let w = Window::new(m, n, c).unwrap();
        let ours: Vec<Vec<Vec<i64>>> = enumerate_maximal_chains(w)
            .map(|ch| ch.elements().iter().map(|d| d.degrees().to_vec()).collect())
            .collect();
        let set: BTreeSet<_> = ours.iter().cloned().collect();
        assert_eq!(set.len(), ours.len(), "duplicates in {w:?}");
        assert_eq!(set, brute_force_chains(w), "window {w:?}");
        let length = w.rows() * w.cols();
        assert!(ours.iter().all(|ch| ch.len() == length));
    }
}

#[test]
fn chain_bases_are_invertible() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..40 {
        let m = rng.gen_range(-3..=3);
        let w = Window::new(m, m + rng.gen_range(0..=3), rng.gen_range(0..=3)).unwrap();
        let chain = random_maximal_chain(w, |n| rng.gen_range(0..n));
        assert_eq!(rank(&chain_basis_matrix(&chain)), w.size());
        for d in chain.elements() {
            let t = pure_diagram_in(d, w).unwrap();
            for (i, &j) in d.degrees().iter().enumerate() {
                assert_eq!(t.get(i, j), pure_entry(d.degrees(), i));
            }
        }
    }
}

#[test]
fn greedy_steps_strictly_add_zeros() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tables: Vec<BettiTable> = (1..=4).map(|k| betti_table(&path_ideal().power(k).unwrap()).unwrap()).collect();
    for _ in 0..30 {
        let m = rng.gen_range(0..=2);
        let w = Window::new(m, m + rng.gen_range(0..=2), rng.gen_range(0..=3)).unwrap();
        let chain = random_maximal_chain(w, |n| rng.gen_range(0..n));
        let mut t = BettiTable::zeros(w);
        for d in chain.elements() {
            if rng.gen_bool(0.5) {
                continue;
            }
            t = t.add_scaled(&pure_diagram_in(d, w).unwrap(), &random_rational(&mut rng, 9, 4));
        }
        if !t.is_zero() {
            tables.push(t);
        }
    }
    for t in tables {
        let d = greedy_decompose(&t).unwrap();
        let mut residual = t.clone();
        let mut zeros = residual.count_zeros();
        for term in d.nonzero_terms() {
            let pure = pure_diagram_in(&term.sequence, t.window()).unwrap();
            residual = residual.add_scaled(&pure, &-term.coefficient.clone());
            assert!(residual.is_nonnegative());
            assert!(residual.count_zeros() > zeros);
            zeros = residual.count_zeros();
        }
        assert!(residual.is_zero());
    }
}

fn path_fit() -> bsdecomp::SymbolicBettiTable {
    let tables = (3..=8).map(|k| (k, betti_table(&path_ideal().power(k as u32).unwrap()).unwrap())).collect();
    fit_family(&tables, 2, 3).unwrap()
}

#[test]
fn fit_soundness_and_degree_bound() {
    let fit = path_fit();
    for k in 3..=8 {
        let t = betti_table(&path_ideal().power(k as u32).unwrap()).unwrap();
        assert!(fit.evaluate(k).same_entries(&t));
    }
    assert!(fit.max_degree().unwrap() <= 3);
}

#[test]
fn symbolic_and_numeric_commute_on_every_chain() {
    let fit = path_fit();
    let window = fit.offset_window().unwrap();
    let tables: BTreeMap<i64, BettiTable> =
        (3..=6).map(|k| (k, betti_table(&path_ideal().power(k as u32).unwrap()).unwrap())).collect();
    let greedy = symbolic_greedy_decompose(&fit).unwrap();
    for (&k, t) in &tables {
        let numeric = greedy_decompose(t).unwrap();
        assert_eq!(greedy.evaluate(k).terms, numeric.terms, "k={k}");
    }
    for chain in enumerate_maximal_chains(window) {
        let symbolic = symbolic_chain_decompose(&fit, &chain).unwrap();
        for (&k, t) in &tables {
            let numeric = chain_decompose(t, &chain.shifted(2 * k)).unwrap();
            assert_eq!(symbolic.evaluate(k).coefficients(), numeric.coefficients(), "k={k}");
        }
    }
}

#[test]
fn symbolic_reconstruction_is_an_identity() {
    let fit = path_fit();
    let window = fit.offset_window().unwrap();
    let mut decompositions = vec![symbolic_greedy_decompose(&fit).unwrap()];
    decompositions.extend(enumerate_maximal_chains(window).map(|c| symbolic_chain_decompose(&fit, &c).unwrap()));
    for d in decompositions {
        let rebuilt = d.reconstruct();
        let nonzero: BTreeMap<(usize, i64), PolynomialQ> = rebuilt.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        assert_eq!(nonzero, fit.entries);
    }
}

#[test]
fn numeric_positive_chain_matches_greedy_for_small_powers() {
    let fit = path_fit();
    let family = positive_family_chain(&fit, fit.offset_window().unwrap()).unwrap();
    assert_eq!(family.total_chains, 14);
    assert_eq!(family.distinct_decompositions, 1);
    for k in 3..=5 {
        let t = betti_table(&path_ideal().power(k as u32).unwrap()).unwrap();
        let chain_terms: Vec<_> =
            chain_decompose(&t, &family.chain.shifted(2 * k)).unwrap().nonzero_terms().cloned().collect();
        let greedy: Vec<_> = greedy_decompose(&t).unwrap().nonzero_terms().cloned().collect();
        assert_eq!(chain_terms, greedy);
        assert!(chain_terms.iter().all(|t| t.coefficient > Rational::zero()));
    }
}

#[test]
fn ideal_json_round_trip() {
    let text = r#"{"variables":4,"generators":["x1^2*x3","x2*x4",[0,0,3,0]]}"#;
    let ideal = parse_ideal_json(text).unwrap();
    let back = serde_json::to_string(&IdealJson::from(&ideal)).unwrap();
    assert_eq!(parse_ideal_json(&back).unwrap(), ideal);
    assert!(parse_ideal_json(r#"{"variables":4,"generators":["x1"],"extra":1}"#).is_err());
}

fn arb_table() -> impl Strategy<Value = BettiTable> {
    (-3i64..3, 0i64..3, 0usize..4).prop_flat_map(|(m, rows, c)| {
        let w = Window::new(m, m + rows, c).unwrap();
        prop::collection::vec((-50i64..50, 1i64..12), w.size())
            .prop_map(move |v| BettiTable::from_flat(w, v.into_iter().map(|(n, d)| q(n, d)).collect()))
    })
}

proptest! {
    #[test]
    fn btt_round_trip(t in arb_table()) {
        let text = t.to_btt();
        let back = BettiTable::from_btt(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_btt(), text);
    }

    #[test]
    fn decomposition_json_round_trip(t in arb_table(), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chain: Chain = random_maximal_chain(t.window(), |n| rng.gen_range(0..n));
        let d = chain_decompose(&t, &chain).unwrap();
        let text = serde_json::to_string(&d.to_json()).unwrap();
        let parsed: DecompositionJson = serde_json::from_str(&text).unwrap();
        let back = parsed.to_decomposition().unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
        prop_assert!(back.reconstruct().same_entries(&t));
    }
}
