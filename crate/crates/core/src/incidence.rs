//! Incidence data: the multiset of relation supports (group side) or of
//! intersection-point supports (arrangement side). Ranks and the holonomy
//! oracle both read only this.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("support {support:?} has fewer than two elements")]
    TooSmall { support: Vec<usize> },
    #[error("support {support:?} mentions an index outside 1..={n}")]
    OutOfRange { support: Vec<usize>, n: usize },
    #[error("support {support:?} repeats an index")]
    Repeated { support: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceData {
    n: usize,
    supports: Vec<Vec<usize>>,
}

impl IncidenceData {
    /// Each support is sorted; the list of supports is sorted lexicographically.
    pub fn new(n: usize, supports: Vec<Vec<usize>>) -> Result<Self, IncidenceError> {
        let mut supports: Vec<Vec<usize>> = supports
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s
            })
            .collect();
        for s in &supports {
            if s.len() < 2 {
                return Err(IncidenceError::TooSmall { support: s.clone() });
            }
            if s[0] == 0 || *s.last().unwrap() > n {
                return Err(IncidenceError::OutOfRange {
                    support: s.clone(),
                    n,
                });
            }
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(IncidenceError::Repeated { support: s.clone() });
            }
        }
        supports.sort();
        Ok(Self { n, supports })
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn supports(&self) -> &[Vec<usize>] {
        &self.supports
    }

    /// Supports of size at least three.
    pub fn multiple_supports(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.supports.iter().filter(|s| s.len() >= 3)
    }

    /// `n_i`, the number of supports of size `i`.
    pub fn count_of_size(&self, i: usize) -> usize {
        self.supports.iter().filter(|s| s.len() == i).count()
    }

    /// Map `i -> n_i` over all sizes present.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for s in &self.supports {
            *out.entry(s.len()).or_insert(0) += 1;
        }
        out
    }

    /// `Σ C(|S|, 2)`.
    pub fn pair_coverage(&self) -> u64 {
        self.supports.iter().map(|s| choose2(s.len() as u64)).sum()
    }

    /// Every generator pair lies in exactly one support.
    pub fn covers_all_pairs(&self) -> bool {
        let n = self.n;
        let mut seen = vec![false; (n + 1) * (n + 1)];
        for s in &self.supports {
            for (a, &i) in s.iter().enumerate() {
                for &j in &s[a + 1..] {
                    let k = i * (n + 1) + j;
                    if seen[k] {
                        return false;
                    }
                    seen[k] = true;
                }
            }
        }
        self.pair_coverage() == choose2(n as u64)
    }

    /// Image under the generator permutation `perm` (`perm[i-1]` is the new
    /// index of generator `i`).
    pub fn relabeled(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let supports = self
            .supports
            .iter()
            .map(|s| s.iter().map(|&g| perm[g - 1]).collect())
            .collect();
        Self::new(self.n, supports).expect("permutation preserves validity")
    }
}

pub(crate) fn choose2(m: u64) -> u64 {
    m * m.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_and_coverage() {
        let inc = IncidenceData::new(4, vec![vec![3, 1, 2], vec![1, 4], vec![2, 4], vec![3, 4]])
            .unwrap();
        assert_eq!(inc.supports()[0], vec![1, 2, 3]);
        assert_eq!(inc.count_of_size(3), 1);
        assert_eq!(inc.count_of_size(2), 3);
        assert_eq!(inc.pair_coverage(), 6);
        assert!(inc.covers_all_pairs());
    }

    #[test]
    fn rejects_bad_supports() {
        assert!(IncidenceData::new(3, vec![vec![1]]).is_err());
        assert!(IncidenceData::new(3, vec![vec![1, 4]]).is_err());
        assert!(IncidenceData::new(3, vec![vec![2, 2]]).is_err());
    }

    #[test]
    fn double_cover_is_not_total_cover() {
        let inc = IncidenceData::new(3, vec![vec![1, 2], vec![1, 2], vec![1, 3]]).unwrap();
        assert!(!inc.covers_all_pairs());
    }
}
