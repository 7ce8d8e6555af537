//! Closed-form ranks of the lower central series quotients.
//!
//! For a conjugation-free presentation with a cycle-separated relation graph,
//! `φ_k = Σ_{i≥3} n_i ω_k(i-1)` for every `k ≥ 2`, where `n_i` counts relations
//! of length `i` and `ω_k(m)` is the Witt number (rank of the degree-`k` part of
//! the free Lie algebra on `m` generators). This module evaluates that formula,
//! the independent degree-2 count, `b_2`, and the LCS product identity.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::incidence::{choose2, IncidenceData};
use crate::presentation::{is_conjugation_free, incidence_of, Presentation};
use crate::relgraph::{build_graph, is_cycle_separated};
use crate::series::TruncatedSeries;

/// Largest supported degree `k`.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RanksError {
    #[error("degree {0} is outside the supported range 1..={MAX_DEGREE}")]
    DegreeOutOfRange(usize),
    #[error("the rank formula needs a conjugation-free presentation; pass --assume-decomposable to evaluate it anyway")]
    NotConjugationFree,
    #[error("the rank formula needs a cycle-separated relation graph; pass --assume-decomposable to evaluate it anyway")]
    NotCycleSeparated,
}

/// Möbius function by trial division.
pub fn mobius(k: usize) -> i32 {
    assert!(k >= 1);
    let mut m = k;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Witt number `ω_k(n) = (1/k) Σ_{d|k} μ(d) n^{k/d}`.
///
/// # Panics
/// If `k` is zero or exceeds [`MAX_DEGREE`].
pub fn witt(k: usize, n: u64) -> BigUint {
    assert!(
        (1..=MAX_DEGREE).contains(&k),
        "degree {k} outside 1..={MAX_DEGREE}"
    );
    let base = BigInt::from(n);
    let mut sum = BigInt::zero();
    for d in (1..=k).filter(|d| k % d == 0) {
        let mu = mobius(d);
        if mu != 0 {
            sum += num_traits::pow(base.clone(), k / d) * mu;
        }
    }
    (sum / k)
        .to_biguint()
        .expect("Witt numbers are non-negative")
}

/// `φ_1..φ_K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankTable {
    phi: Vec<BigUint>,
    /// Evaluated outside the theorem's hypothesis.
    pub conjectural: bool,
}

impl RankTable {
    pub fn max_degree(&self) -> usize {
        self.phi.len()
    }

    /// `φ_k`, for `1 <= k <= max_degree`.
    pub fn phi(&self, k: usize) -> &BigUint {
        &self.phi[k - 1]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.phi
    }
}

impl fmt::Display for RankTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.phi.iter().enumerate() {
            writeln!(f, "phi[{}] = {}", i + 1, v)?;
        }
        Ok(())
    }
}

fn check_degree(max_k: usize) -> Result<(), RanksError> {
    if (1..=MAX_DEGREE).contains(&max_k) {
        Ok(())
    } else {
        Err(RanksError::DegreeOutOfRange(max_k))
    }
}

/// Evaluates `φ_1 = n`, `φ_k = Σ_{i≥3} n_i ω_k(i-1)` for `2 <= k <= max_k`.
/// No hypothesis is checked here; see [`phi_for_presentation`].
pub fn phi_formula(inc: &IncidenceData, max_k: usize) -> Result<RankTable, RanksError> {
    check_degree(max_k)?;
    let census = inc.census();
    let mut phi = Vec::with_capacity(max_k);
    phi.push(BigUint::from(inc.generators()));
    for k in 2..=max_k {
        let mut total = BigUint::zero();
        for (&size, &count) in census.range(3..) {
            total += witt(k, size as u64 - 1) * count;
        }
        phi.push(total);
    }
    Ok(RankTable {
        phi,
        conjectural: false,
    })
}

/// Reasons the rank theorem does not apply to a presentation.
pub fn hypothesis_failures(p: &Presentation) -> Vec<RanksError> {
    let mut out = Vec::new();
    if !is_conjugation_free(p) {
        out.push(RanksError::NotConjugationFree);
    }
    if !is_cycle_separated(&build_graph(p)) {
        out.push(RanksError::NotCycleSeparated);
    }
    out
}

/// The rank formula for a presentation, after checking it is conjugation-free
/// with a cycle-separated graph. With `assume_decomposable` a failed check
/// marks the table conjectural instead of erroring.
pub fn phi_for_presentation(
    p: &Presentation,
    max_k: usize,
    assume_decomposable: bool,
) -> Result<RankTable, RanksError> {
    check_degree(max_k)?;
    let failures = hypothesis_failures(p);
    if !failures.is_empty() && !assume_decomposable {
        return Err(failures.into_iter().next().unwrap());
    }
    let mut table = phi_formula(&incidence_of(p), max_k)?;
    table.conjectural = !failures.is_empty();
    Ok(table)
}

/// Each relation of length `m >= 3` contributes `C(m,2) - m + 1` independent
/// commutators to `G_2/G_3`.
pub fn phi2_combinatorial(inc: &IncidenceData) -> u64 {
    inc.multiple_supports()
        .map(|s| {
            let m = s.len() as u64;
            choose2(m) - m + 1
        })
        .sum()
}

/// `b_2 = Σ_S (|S| - 1)` over all supports, nodes included.
pub fn b2(inc: &IncidenceData) -> u64 {
    inc.supports().iter().map(|s| s.len() as u64 - 1).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LcsCheck {
    Pass,
    /// First coefficient where the two sides disagree.
    Fail { coefficient: usize },
}

impl LcsCheck {
    pub fn passed(self) -> bool {
        self == LcsCheck::Pass
    }
}

impl fmt::Display for LcsCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LcsCheck::Pass => f.write_str("pass"),
            LcsCheck::Fail { coefficient } => write!(f, "fail@coeff{coefficient}"),
        }
    }
}

/// `∏_{k≤K} (1 - t^k)^{φ_k}` truncated at degree `K`.
pub fn lcs_product(table: &RankTable) -> TruncatedSeries {
    let k_max = table.max_degree();
    let mut acc = TruncatedSeries::one(k_max);
    for k in 1..=k_max {
        let phi = table.phi(k);
        if !phi.is_zero() {
            acc = &acc * &TruncatedSeries::one_minus_t_pow(k_max, k, phi);
        }
    }
    acc
}

/// Compares `∏ (1 - t^k)^{φ_k}` with `(1 - t)^{n - b_2} ∏_p (1 - (m(p) - 1) t)`
/// modulo `t^{K+1}`. The `(1 - t)` power is moved to whichever side keeps
/// its exponent non-negative.
pub fn lcs_identity(inc: &IncidenceData, table: &RankTable) -> LcsCheck {
    let k_max = table.max_degree();
    let n = inc.generators() as i64;
    let b2 = b2(inc) as i64;
    let mut lhs = lcs_product(table);
    let mut rhs = TruncatedSeries::one(k_max);
    for s in inc.supports() {
        let factor = TruncatedSeries::linear(k_max, -(s.len() as i64 - 1));
        rhs = &rhs * &factor;
    }
    let shift = n - b2;
    let one_minus_t = |e: u64| TruncatedSeries::one_minus_t_pow(k_max, 1, &BigUint::from(e));
    if shift >= 0 {
        rhs = &rhs * &one_minus_t(shift as u64);
    } else {
        lhs = &lhs * &one_minus_t((-shift) as u64);
    }
    match lhs.first_difference(&rhs) {
        None => LcsCheck::Pass,
        Some(coefficient) => LcsCheck::Fail { coefficient },
    }
}

/// [`lcs_identity`] with `φ` taken from [`phi_formula`].
pub fn lcs_series_check(inc: &IncidenceData, max_k: usize) -> Result<LcsCheck, RanksError> {
    Ok(lcs_identity(inc, &phi_formula(inc, max_k)?))
}

/// `Σ_{i≥3} n_i ω_k(i-1)` as a machine integer, when it fits.
pub fn local_sum(inc: &IncidenceData, k: usize) -> Option<u64> {
    let mut total = BigUint::zero();
    for s in inc.multiple_supports() {
        total += witt(k, s.len() as u64 - 1);
    }
    total.to_u64()
}

/// The rank report block.
pub struct RankReport<'a> {
    pub table: &'a RankTable,
    pub b2: u64,
    pub lcs: LcsCheck,
}

impl fmt::Display for RankReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.table)?;
        writeln!(f, "b2 = {}", self.b2)?;
        writeln!(f, "lcs_identity = {}", self.lcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Lyndon words of length `k` over `n` letters, by brute force.
    fn lyndon_count(k: usize, n: usize) -> u64 {
        let mut count = 0;
        let mut word = vec![0usize; k];
        let total = n.pow(k as u32);
        for code in 0..total {
            let mut c = code;
            for slot in word.iter_mut().rev() {
                *slot = c % n;
                c /= n;
            }
            let is_lyndon = (1..k).all(|r| word[..] < word[r..].iter().chain(&word[..r]).copied().collect::<Vec<_>>()[..]);
            if is_lyndon {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn mobius_values() {
        let expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expected.iter().enumerate() {
            assert_eq!(mobius(i + 1), m, "mu({})", i + 1);
        }
        assert_eq!(mobius(64), 0);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn witt_small_values() {
        for n in 0..6u64 {
            assert_eq!(witt(1, n), BigUint::from(n));
            assert_eq!(witt(2, n), BigUint::from(n * n.saturating_sub(1) / 2));
        }
        assert_eq!(witt(3, 2), BigUint::from(2u32));
        assert_eq!(witt(3, 3), BigUint::from(8u32));
    }

    #[test]
    fn witt_matches_lyndon_enumeration() {
        for n in 1..=4 {
            for k in 1..=6 {
                assert_eq!(witt(k, n as u64), BigUint::from(lyndon_count(k, n)), "k={k} n={n}");
            }
        }
        assert_eq!(lyndon_count(3, 2), 2);
        assert_eq!(lyndon_count(3, 3), 8);
    }

    #[test]
    fn witt_at_max_degree_is_exact() {
        // ω_64(2) = (2^64 - 2^32) / 64
        let expected = (BigUint::from(1u8) << 64usize) - (BigUint::from(1u8) << 32usize);
        assert_eq!(witt(64, 2), expected / 64u32);
    }

    #[test]
    fn pencil_gives_witt_of_n_minus_one() {
        for n in 3..=7 {
            let inc = incidence_of(&fixtures::pencil(n));
            let t = phi_formula(&inc, 6).unwrap();
            assert_eq!(t.phi(1), &BigUint::from(n));
            for k in 2..=6 {
                assert_eq!(t.phi(k), &witt(k, n as u64 - 1));
            }
        }
    }

    #[test]
    fn example_h_ranks() {
        let t = phi_for_presentation(&fixtures::example_h(), 5, false).unwrap();
        let v: Vec<u64> = t.values().iter().map(|x| x.to_u64().unwrap()).collect();
        assert_eq!(v, vec![7, 3, 6, 9, 18]);
        assert!(!t.conjectural);
    }

    #[test]
    fn braid_section_needs_the_flag() {
        let p = fixtures::braid_section();
        assert_eq!(
            phi_for_presentation(&p, 3, false),
            Err(RanksError::NotCycleSeparated)
        );
        let t = phi_for_presentation(&p, 3, true).unwrap();
        assert!(t.conjectural);
        assert_eq!(t.phi(3), &BigUint::from(8u32));
        assert_eq!(t.phi(2), &BigUint::from(4u32));
    }

    #[test]
    fn g2_is_not_conjugation_free() {
        assert_eq!(
            phi_for_presentation(&fixtures::example_g2(), 3, false),
            Err(RanksError::NotConjugationFree)
        );
    }

    #[test]
    fn degree_bounds() {
        let inc = incidence_of(&fixtures::pencil(3));
        assert_eq!(phi_formula(&inc, 0), Err(RanksError::DegreeOutOfRange(0)));
        assert_eq!(phi_formula(&inc, 65), Err(RanksError::DegreeOutOfRange(65)));
        assert!(phi_formula(&inc, 64).is_ok());
    }

    #[test]
    fn phi2_counts() {
        let one_triple = IncidenceData::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(phi2_combinatorial(&one_triple), 1);
        assert_eq!(phi2_combinatorial(&incidence_of(&fixtures::generic(6))), 0);
        assert_eq!(phi2_combinatorial(&incidence_of(&fixtures::braid_section())), 4);
    }

    #[test]
    fn b2_values() {
        assert_eq!(b2(&incidence_of(&fixtures::generic(6))), 15);
        assert_eq!(b2(&incidence_of(&fixtures::pencil(6))), 5);
        assert_eq!(b2(&incidence_of(&fixtures::example_h())), 18);
    }

    #[test]
    fn lcs_identity_on_fixtures() {
        for p in [
            fixtures::generic(5),
            fixtures::example_h(),
            fixtures::x3(),
            fixtures::pencil(4),
            fixtures::cycle_separated_example(),
        ] {
            assert_eq!(lcs_series_check(&incidence_of(&p), 8).unwrap(), LcsCheck::Pass);
        }
    }

    #[test]
    fn lcs_identity_detects_wrong_ranks() {
        let inc = incidence_of(&fixtures::example_h());
        let mut t = phi_formula(&inc, 6).unwrap();
        t.phi[2] += 1u32; // φ_3 off by one
        assert_eq!(lcs_identity(&inc, &t), LcsCheck::Fail { coefficient: 3 });
    }

    #[test]
    fn pbw_identity() {
        for n in 0..=4u64 {
            let phi = (1..=8).map(|k| witt(k, n)).collect();
            let t = RankTable {
                phi,
                conjectural: false,
            };
            let expected = TruncatedSeries::linear(8, -(n as i64));
            assert_eq!(lcs_product(&t), expected);
        }
    }

    #[test]
    fn report_lines() {
        let inc = incidence_of(&fixtures::example_h());
        let table = phi_formula(&inc, 3).unwrap();
        let text = RankReport {
            table: &table,
            b2: b2(&inc),
            lcs: lcs_identity(&inc, &table),
        }
        .to_string();
        assert_eq!(
            text,
            "phi[1] = 7\nphi[2] = 3\nphi[3] = 6\nb2 = 18\nlcs_identity = pass\n"
        );
    }
}
