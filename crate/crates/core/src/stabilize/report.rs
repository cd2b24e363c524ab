use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    fit_family, positive_family_chain, shifted_shape, symbolic_greedy_decompose, total_betti_polynomials, Instability,
    PolynomialJson, PolynomialQ, PositiveFamily, StabilizeError, SymbolicBettiTable, TranslatedDecomposition,
};
use crate::decompose::{chain_decompose, greedy_decompose};
use crate::monomial::{betti_table, IdealJson, MonomialIdeal};
use crate::pure::DegreeSequence;
use crate::table::BettiTable;

#[derive(Debug, Clone)]
pub struct StabilizationReport {
    pub ideal: MonomialIdeal,
    pub r: u32,
    pub k_min: i64,
    pub k_max: i64,
    pub degree_bound: usize,
    /// Least `k` in range from which every shifted support agrees.
    pub k0_observed: i64,
    pub fit: SymbolicBettiTable,
    pub total_betti: Vec<PolynomialQ>,
    pub positive: TranslatedDecomposition,
    pub family: PositiveFamily,
    /// Decomposition claims hold for every integer `k ≥ certified_from`,
    /// provided the fit holds there.
    pub certified_from: i64,
    pub checked_k: Vec<i64>,
    /// The subset of `checked_k` where every numeric recheck passed.
    pub verified_k: Vec<i64>,
    pub tables: BTreeMap<i64, BettiTable>,
}

/// Computes `β(I^k)` over `k_min..=k_max`, locates the shape stabilization,
/// fits polynomials of degree `≤ degree_bound`, runs the symbolic greedy
/// decomposition and the positive-chain search, then rechecks everything
/// against fresh numeric decompositions at each sampled `k`.
pub fn detect_stabilization(
    ideal: &MonomialIdeal,
    k_min: i64,
    k_max: i64,
    degree_bound: usize,
) -> Result<StabilizationReport, StabilizeError> {
    let r = ideal.is_equigenerated().ok_or(StabilizeError::NotEquigenerated)?;
    let need = degree_bound + 2;
    let k_min = k_min.max(1);
    let have = (k_max - k_min + 1).max(0) as usize;
    if have < need {
        return Err(StabilizeError::InsufficientSamples { have, need });
    }
    let computed: Vec<(i64, BettiTable)> = (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let power = ideal.power(k as u32)?;
            Ok((k, betti_table(&power)?))
        })
        .collect::<Result<_, StabilizeError>>()?;
    let tables: BTreeMap<i64, BettiTable> = computed.into_iter().collect();
    let shift = |k: i64| r as i64 * k;
    let shapes: BTreeMap<i64, _> = tables.iter().map(|(&k, t)| (k, shifted_shape(t, shift(k)))).collect();

    let final_shape = &shapes[&k_max];
    let mut k0 = k_max;
    while k0 > k_min && &shapes[&(k0 - 1)] == final_shape {
        k0 -= 1;
    }
    let shape_change = |k: i64| -> StabilizeError {
        let (col, offset) =
            *shapes[&(k - 1)].symmetric_difference(&shapes[&k]).next().expect("shapes differ at a change point");
        StabilizeError::NotStabilized { k, col, offset, reason: Instability::ShapeChange }
    };

    // The Betti numbers may become polynomial later than the shape settles.
    let mut start = k0;
    let fit = loop {
        if ((k_max - start + 1) as usize) < need {
            return Err(if k0 > k_min {
                shape_change(k0)
            } else {
                StabilizeError::InsufficientSamples { have: (k_max - start + 1) as usize, need }
            });
        }
        let window: BTreeMap<i64, BettiTable> = tables.range(start..).map(|(&k, t)| (k, t.clone())).collect();
        match fit_family(&window, r, degree_bound) {
            Ok(fit) => break fit,
            Err(StabilizeError::NotStabilized { reason: Instability::HoldoutMismatch, .. }) => start += 1,
            Err(e) => return Err(e),
        }
    };

    let positive = symbolic_greedy_decompose(&fit)?;
    let window = fit.offset_window().expect("fitted tables are nonzero");
    let family = positive_family_chain(&fit, window)?;
    let same_terms = family.decomposition.nonzero_terms().eq(positive.terms.iter());
    if !same_terms {
        return Err(StabilizeError::Inconsistent {
            k: fit.valid_from,
            what: "positive chain expansion disagrees with the symbolic greedy decomposition".into(),
        });
    }
    let certified_from = positive.certified_from.max(family.threshold);

    let checked_k: Vec<i64> = (fit.valid_from..=k_max).collect();
    let mut verified_k = Vec::new();
    for &k in &checked_k {
        let table = &tables[&k];
        let problem = recheck(&fit, &positive, &family, table, k);
        match problem {
            None => verified_k.push(k),
            Some(what) if k >= certified_from => return Err(StabilizeError::Inconsistent { k, what }),
            Some(_) => {}
        }
    }

    Ok(StabilizationReport {
        ideal: ideal.clone(),
        r,
        k_min,
        k_max,
        degree_bound,
        k0_observed: k0,
        total_betti: total_betti_polynomials(&fit),
        fit,
        positive,
        family,
        certified_from,
        checked_k,
        verified_k,
        tables,
    })
}

fn recheck(
    fit: &SymbolicBettiTable,
    positive: &TranslatedDecomposition,
    family: &PositiveFamily,
    table: &BettiTable,
    k: i64,
) -> Option<String> {
    if !fit.evaluate(k).same_entries(table) {
        return Some("fitted polynomials do not reproduce the table".into());
    }
    let numeric = match greedy_decompose(table) {
        Ok(d) => d,
        Err(e) => return Some(format!("numeric greedy failed: {e}")),
    };
    let symbolic = positive.evaluate(k);
    if numeric.terms != symbolic.terms {
        return Some("greedy decomposition differs from the evaluated symbolic one".into());
    }
    let chain = family.chain.shifted(fit.r as i64 * k);
    match chain_decompose(table, &chain) {
        Ok(d) if d.coefficients() == family.decomposition.evaluate(k).coefficients() => None,
        Ok(_) => Some("chain coefficients differ from the evaluated polynomials".into()),
        Err(e) => Some(format!("numeric chain expansion failed: {e}")),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslatedTermJson {
    pub offsets: DegreeSequence,
    pub coefficient_poly: PolynomialJson,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslatedDecompositionJson {
    pub r: u32,
    pub terms: Vec<TranslatedTermJson>,
    pub certified_from: i64,
}

impl From<&TranslatedDecomposition> for TranslatedDecompositionJson {
    fn from(d: &TranslatedDecomposition) -> Self {
        TranslatedDecompositionJson {
            r: d.r,
            terms: d
                .terms
                .iter()
                .map(|t| TranslatedTermJson { offsets: t.offsets.clone(), coefficient_poly: t.coefficient.to_json() })
                .collect(),
            certified_from: d.certified_from,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositiveChainJson {
    /// `[M, N, C]` in offset coordinates.
    pub window: [i64; 3],
    pub offsets: Vec<DegreeSequence>,
    pub enumeration_index: usize,
    pub total_chains: usize,
    pub qualifying_chains: usize,
    pub distinct_positive_decompositions: usize,
    pub positive_from: i64,
    pub coefficients: Vec<PolynomialJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilizationReportJson {
    pub ideal: IdealJson,
    pub r: u32,
    pub k_range: [i64; 2],
    pub degree_bound: usize,
    pub k0_observed: i64,
    pub fit_valid_from: i64,
    pub fit: BTreeMap<String, PolynomialJson>,
    pub total_betti: Vec<PolynomialJson>,
    pub positive_decomposition: TranslatedDecompositionJson,
    pub positive_chain: PositiveChainJson,
    pub certified_from: i64,
    pub checked_k: Vec<i64>,
    pub verified_k: Vec<i64>,
    pub notes: Vec<String>,
}

impl StabilizationReport {
    pub fn to_json(&self) -> StabilizationReportJson {
        let w = self.family.chain.window();
        StabilizationReportJson {
            ideal: IdealJson::from(&self.ideal),
            r: self.r,
            k_range: [self.k_min, self.k_max],
            degree_bound: self.degree_bound,
            k0_observed: self.k0_observed,
            fit_valid_from: self.fit.valid_from,
            fit: self.fit.entries.iter().map(|(&(i, j), p)| (format!("({i},{j})"), p.to_json())).collect(),
            total_betti: self.total_betti.iter().map(PolynomialQ::to_json).collect(),
            positive_decomposition: (&self.positive).into(),
            positive_chain: PositiveChainJson {
                window: [w.min_row, w.max_row, w.max_col as i64],
                offsets: self.family.chain.elements().to_vec(),
                enumeration_index: self.family.position,
                total_chains: self.family.total_chains,
                qualifying_chains: self.family.qualifying_chains,
                distinct_positive_decompositions: self.family.distinct_decompositions,
                positive_from: self.family.threshold,
                coefficients: self.family.decomposition.terms.iter().map(|t| t.coefficient.to_json()).collect(),
            },
            certified_from: self.certified_from,
            checked_k: self.checked_k.clone(),
            verified_k: self.verified_k.clone(),
            notes: vec![
                format!(
                    "k0 is the shape stabilization observed on [{}, {}]; it is not a proven bound",
                    self.k_min, self.k_max
                ),
                "certified_from assumes the fitted polynomials stay exact beyond the sampled range".into(),
                format!("chain window uses the last nonzero column c = {} of the stabilized shape", w.max_col),
            ],
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    /// Short human summary.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "ideal {} (r = {}), k in [{}, {}], degree bound {}\n",
            self.ideal, self.r, self.k_min, self.k_max, self.degree_bound
        );
        out += &format!("shape stabilized from k0 = {} (observed)\n", self.k0_observed);
        out += &format!(
            "positive decomposition: {} summands, certified for k >= {}\n",
            self.positive.terms.len(),
            self.certified_from
        );
        for t in &self.positive.terms {
            let shifted: Vec<String> = t
                .offsets
                .degrees()
                .iter()
                .map(|&d| {
                    let rk = match self.r {
                        0 => return d.to_string(),
                        1 => "k".to_string(),
                        r => format!("{r}k"),
                    };
                    match d {
                        0 => rk,
                        d if d < 0 => format!("{rk}{d}"),
                        d => format!("{rk}+{d}"),
                    }
                })
                .collect();
            out += &format!("  ({}) * pi({})\n", t.coefficient, shifted.join(","));
        }
        out += &format!("verified at k = {:?}\n", self.verified_k);
        out
    }
}
