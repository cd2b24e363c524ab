use std::collections::HashMap;

use num_traits::{One, Zero};

use super::{Monomial, MonomialIdeal};
use crate::linalg;
use crate::rational::Rational;

/// A simplicial complex on vertices `0..vertex_count`, faces stored as bitmasks.
///
/// The face list is downward closed. The complex `{∅}` has a single face (mask 0);
/// the void complex has none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: Vec<u32>,
}

impl SimplicialComplex {
    /// Builds a complex from a face list, or `None` if it is not downward closed.
    pub fn from_faces(vertex_count: usize, faces: impl IntoIterator<Item = u32>) -> Option<Self> {
        let mut faces: Vec<u32> = faces.into_iter().collect();
        faces.sort_by_key(|f| (f.count_ones(), *f));
        faces.dedup();
        let present: std::collections::HashSet<u32> = faces.iter().copied().collect();
        let closed = faces.iter().all(|&f| {
            f >> vertex_count == 0 && (0..vertex_count).all(|v| f & (1 << v) == 0 || present.contains(&(f & !(1 << v))))
        });
        closed.then_some(SimplicialComplex { vertex_count, faces })
    }

    /// The full simplex on `n` vertices.
    pub fn simplex(n: usize) -> Self {
        Self::from_faces(n, 0..(1u32 << n)).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn faces(&self) -> &[u32] {
        &self.faces
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// `Σ_{σ} (-1)^{dim σ}` over all faces, including `∅` with dimension −1.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces.iter().map(|f| if f.count_ones() % 2 == 1 { 1 } else { -1 }).sum()
    }
}

/// Faces `σ ⊆ supp(b)` with `x^{b-σ} ∈ I`.
pub fn upper_koszul_complex(ideal: &MonomialIdeal, b: &Monomial) -> SimplicialComplex {
    let n = ideal.num_vars();
    let support = b.support_mask();
    let mut faces = Vec::new();
    let mut exps = b.exponents().to_vec();
    // Iterate over all submasks of the support.
    let mut sigma = support;
    loop {
        for (v, e) in exps.iter_mut().enumerate() {
            *e = b.exponents()[v] - ((sigma >> v) & 1);
        }
        if ideal.generators().iter().any(|g| g.exponents().iter().zip(&exps).all(|(a, e)| a <= e)) {
            faces.push(sigma);
        }
        if sigma == 0 {
            break;
        }
        sigma = (sigma - 1) & support;
    }
    SimplicialComplex::from_faces(n, faces).expect("upper Koszul complexes are downward closed")
}

/// `dim H̃_p(K; Q)` for `p = -1, 0, ..., dim K`; index 0 holds `H̃_{-1}`.
/// The void complex yields `[0]`.
pub fn reduced_homology_dims(complex: &SimplicialComplex) -> Vec<usize> {
    if complex.is_void() {
        return vec![0];
    }
    let top = complex.faces.iter().map(|f| f.count_ones() as usize).max().unwrap();
    // by_size[s] lists faces with s vertices (dimension s - 1).
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    for &f in &complex.faces {
        by_size[f.count_ones() as usize].push(f);
    }
    // ranks[s] = rank of the boundary map from size-s faces to size-(s-1) faces.
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        ranks[s] = boundary_rank(&by_size[s], &by_size[s - 1]);
    }
    (0..=top).map(|s| by_size[s].len() - ranks[s] - ranks[s + 1]).collect()
}

fn boundary_rank(faces: &[u32], facets_below: &[u32]) -> usize {
    if faces.is_empty() || facets_below.is_empty() {
        return 0;
    }
    let row_of: HashMap<u32, usize> = facets_below.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut matrix = vec![vec![Rational::zero(); faces.len()]; facets_below.len()];
    for (col, &f) in faces.iter().enumerate() {
        let mut pos = 0;
        for v in 0..32 {
            if f & (1 << v) == 0 {
                continue;
            }
            if let Some(&row) = row_of.get(&(f & !(1 << v))) {
                matrix[row][col] = if pos % 2 == 0 { Rational::one() } else { -Rational::one() };
            }
            pos += 1;
        }
    }
    linalg::rank(&matrix)
}
