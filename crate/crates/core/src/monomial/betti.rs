use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{lcm_closure, reduced_homology_dims, upper_koszul_complex, Monomial, MonomialError, MonomialIdeal};
use crate::rational::Rational;
use crate::table::BettiTable;

/// Nonzero multigraded Betti numbers `β_{i,b}(I)`, keyed by `(b, i)`.
///
/// `β_{i,b}(I) = dim H̃_{i-1}(K^b(I))`, and only multidegrees in the lcm
/// closure of the generators can contribute.
pub fn multigraded_betti(ideal: &MonomialIdeal) -> Result<BTreeMap<(Monomial, usize), u64>, MonomialError> {
    if ideal.is_zero() {
        return Err(MonomialError::ZeroIdeal);
    }
    let degrees: Vec<Monomial> = lcm_closure(ideal).into_iter().collect();
    let per_degree: Vec<Vec<((Monomial, usize), u64)>> = degrees
        .into_par_iter()
        .map(|b| {
            let dims = reduced_homology_dims(&upper_koszul_complex(ideal, &b));
            dims.into_iter().enumerate().filter(|&(_, d)| d > 0).map(|(i, d)| ((b.clone(), i), d as u64)).collect()
        })
        .collect();
    Ok(per_degree.into_iter().flatten().collect())
}

/// The graded Betti table of the ideal `I` itself (not `S/I`).
///
/// The window starts at the least generator degree and ends at the last
/// nonzero row; the column cap is the last nonzero column.
pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable, MonomialError> {
    let mut graded: BTreeMap<(usize, i64), u64> = BTreeMap::new();
    for ((b, i), d) in multigraded_betti(ideal)? {
        *graded.entry((i, b.degree() as i64)).or_default() += d;
    }
    let table =
        BettiTable::from_entries(graded.into_iter().map(|((i, j), v)| (i, j, Rational::from_integer(BigInt::from(v)))))
            .expect("a nonzero ideal has generators");
    Ok(table)
}
