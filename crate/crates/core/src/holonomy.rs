//! Degree-2 and degree-3 ranks of the holonomy Lie algebra.
//!
//! Each support `S` linearizes to the relators
//! `ρ_{S,k} = Σ_{j∈S, j≠k} [x_k, x_j]` for `k ∈ S`. The holonomy Lie algebra is
//! the free Lie algebra modulo the ideal they generate; its degree-3 part of
//! the ideal is spanned by the brackets `[ρ, x_l]`. Everything is expanded in
//! the tensor (word) basis, where Lie elements embed faithfully, and ranks are
//! taken exactly. For arrangement groups these numbers are `φ_2` and `φ_3`;
//! for abstract presentations they are the holonomy ranks and nothing more.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::incidence::{choose2, IncidenceData};
use crate::linalg::{rank, SparseRow};
use crate::ranks::witt;

/// Default limit on the number of generators for the degree-3 oracle.
pub const DEFAULT_MAX_GENERATORS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HolonomyError {
    #[error("{n} generators exceed the oracle bound of {bound}")]
    TooManyGenerators { n: usize, bound: usize },
}

/// A homogeneous element of the tensor algebra: word -> coefficient.
/// Letters are 1-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    degree: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl TensorVector {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// `[x_i, x_j] = ij - ji`.
    pub fn commutator(i: usize, j: usize) -> Self {
        let mut v = Self::zero(2);
        v.add_term(vec![i, j], 1);
        v.add_term(vec![j, i], -1);
        v
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<usize>, i64> {
        &self.terms
    }

    pub fn coeff(&self, word: &[usize]) -> i64 {
        self.terms.get(word).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: Vec<usize>, c: i64) {
        debug_assert_eq!(word.len(), self.degree);
        match self.terms.entry(word) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                if c != 0 {
                    slot.insert(c);
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &TensorVector) {
        assert_eq!(self.degree, other.degree);
        for (w, &c) in &other.terms {
            self.add_term(w.clone(), c);
        }
    }

    /// `[v, x_l] = v·x_l - x_l·v`.
    pub fn bracket_with_generator(&self, l: usize) -> TensorVector {
        let mut out = TensorVector::zero(self.degree + 1);
        for (w, &c) in &self.terms {
            let mut right = w.clone();
            right.push(l);
            out.add_term(right, c);
            let mut left = Vec::with_capacity(w.len() + 1);
            left.push(l);
            left.extend_from_slice(w);
            out.add_term(left, -c);
        }
        out
    }

    /// Sum of coefficients over each class of cyclic rotations. Lie elements
    /// of degree >= 2 have all these sums equal to zero.
    pub fn rotation_class_sums(&self) -> BTreeMap<Vec<usize>, i64> {
        let mut out = BTreeMap::new();
        for (w, &c) in &self.terms {
            let rep = (0..w.len())
                .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
                .min()
                .unwrap_or_default();
            *out.entry(rep).or_insert(0) += c;
        }
        out
    }

    /// Dense column index in the `n^d` word basis.
    fn sparse_row(&self, n: usize) -> SparseRow {
        let mut row: SparseRow = self
            .terms
            .iter()
            .map(|(w, &c)| (w.iter().fold(0, |acc, &g| acc * n + (g - 1)), c))
            .collect();
        row.sort_unstable_by_key(|e| e.0);
        row
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    /// Index into the incidence supports.
    pub support: usize,
    /// The distinguished generator `k`.
    pub pivot: usize,
    pub vector: TensorVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorSet {
    pub n: usize,
    pub relators: Vec<Relator>,
}

/// All `ρ_{S,k}`, in support order then `k` ascending.
pub fn build_relators(inc: &IncidenceData) -> RelatorSet {
    let mut relators = Vec::new();
    for (si, s) in inc.supports().iter().enumerate() {
        for &k in s {
            let mut v = TensorVector::zero(2);
            for &j in s.iter().filter(|&&j| j != k) {
                v.add_assign(&TensorVector::commutator(k, j));
            }
            relators.push(Relator {
                support: si,
                pivot: k,
                vector: v,
            });
        }
    }
    RelatorSet {
        n: inc.generators(),
        relators,
    }
}

impl RelatorSet {
    /// Relators with the last `k` of each support dropped: per support the
    /// relators sum to zero, so this spans the same space with fewer rows.
    fn spanning<'a>(&'a self, inc: &'a IncidenceData) -> impl Iterator<Item = &'a Relator> + 'a {
        self.relators
            .iter()
            .filter(move |r| inc.supports()[r.support].last() != Some(&r.pivot))
    }
}

/// Rank of the degree-2 relators in the `n²` word basis.
pub fn relator_rank_deg2(inc: &IncidenceData) -> usize {
    let set = build_relators(inc);
    let rows: Vec<SparseRow> = set
        .spanning(inc)
        .map(|r| r.vector.sparse_row(inc.generators()))
        .collect();
    rank(&rows)
}

/// `C(n,2) - rank(degree-2 relators)`.
pub fn holonomy_phi2(inc: &IncidenceData) -> u64 {
    choose2(inc.generators() as u64) - relator_rank_deg2(inc) as u64
}

/// Rank of `{[ρ, x_l]}` in the `n³` word basis.
pub fn ideal_rank_deg3(inc: &IncidenceData, bound: usize) -> Result<usize, HolonomyError> {
    let n = inc.generators();
    if n > bound {
        return Err(HolonomyError::TooManyGenerators { n, bound });
    }
    let set = build_relators(inc);
    let mut rows = Vec::new();
    for r in set.spanning(inc) {
        for l in 1..=n {
            let row = r.vector.bracket_with_generator(l).sparse_row(n);
            if !row.is_empty() {
                rows.push(row);
            }
        }
    }
    Ok(rank(&rows))
}

/// `ω_3(n) - rank(degree-3 part of the ideal)`.
pub fn holonomy_phi3(inc: &IncidenceData, bound: usize) -> Result<u64, HolonomyError> {
    let dim = witt(3, inc.generators() as u64)
        .to_u64()
        .expect("bounded n keeps ω_3(n) small");
    Ok(dim - ideal_rank_deg3(inc, bound)? as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub phi2: u64,
    pub phi3: u64,
    pub dim_l2: u64,
    pub dim_l3: u64,
    pub relator_rank_deg2: usize,
    pub ideal_rank_deg3: usize,
}

pub fn oracle(inc: &IncidenceData, bound: usize) -> Result<OracleReport, HolonomyError> {
    let n = inc.generators() as u64;
    let dim_l2 = choose2(n);
    let dim_l3 = (n * n * n - n) / 3;
    let relator_rank_deg2 = relator_rank_deg2(inc);
    let ideal_rank_deg3 = ideal_rank_deg3(inc, bound)?;
    Ok(OracleReport {
        phi2: dim_l2 - relator_rank_deg2 as u64,
        phi3: dim_l3 - ideal_rank_deg3 as u64,
        dim_l2,
        dim_l3,
        relator_rank_deg2,
        ideal_rank_deg3,
    })
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "phi2_oracle = {}", self.phi2)?;
        writeln!(f, "phi3_oracle = {}", self.phi3)?;
        writeln!(f, "dimL2 = {}", self.dim_l2)?;
        writeln!(f, "dimL3 = {}", self.dim_l3)?;
        writeln!(f, "relator_rank_deg2 = {}", self.relator_rank_deg2)?;
        writeln!(f, "ideal_rank_deg3 = {}", self.ideal_rank_deg3)
    }
}
