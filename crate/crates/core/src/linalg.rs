//! Exact rank of integer matrices.
//!
//! The main entry point, [`rank`], runs a sparse fraction-free row echelon
//! reduction: rows are combined as `a·r - b·p` and then divided by their
//! content, so every intermediate value stays an integer and stays small for
//! the structured matrices built by the holonomy oracle. Arithmetic starts in
//! `i64` with overflow checks and restarts in arbitrary precision if any
//! step overflows. [`bareiss_rank`] is an independent dense Bareiss
//! elimination used to cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Sorted `(column, value)` pairs with no zero values.
pub type SparseRow = Vec<(usize, i64)>;

trait Scalar: Clone + PartialEq + Sized {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        // keep |values| well below i64::MIN so negation never overflows
        self.checked_mul(*other).filter(|v| v.unsigned_abs() < (1 << 62))
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other).filter(|v| v.unsigned_abs() < (1 << 62))
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn is_one(&self) -> bool {
        num_traits::One::is_one(self)
    }
}

/// Rank over the rationals of the matrix whose rows are `rows`.
pub fn rank(rows: &[SparseRow]) -> usize {
    match echelon_rank::<i64>(rows) {
        Some(r) => r,
        None => echelon_rank::<BigInt>(rows).expect("arbitrary precision cannot overflow"),
    }
}

fn echelon_rank<T: Scalar>(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<(usize, T)>> = BTreeMap::new();
    for input in rows {
        let mut row: Vec<(usize, T)> = input
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|&(c, v)| (c, T::from_i64(v)))
            .collect();
        normalize(&mut row);
        while let Some((lead, _)) = row.first() {
            match pivots.get(lead) {
                Some(pivot) => {
                    row = eliminate(&row, pivot)?;
                    normalize(&mut row);
                }
                None => {
                    pivots.insert(*lead, row);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

/// `a·row - b·pivot` with `a`, `b` the leading coefficients divided by their
/// gcd, which cancels the leading entry.
fn eliminate<T: Scalar>(row: &[(usize, T)], pivot: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let (p, r) = (&pivot[0].1, &row[0].1);
    let g = p.gcd(r);
    let a = p.div_exact(&g);
    let b = r.div_exact(&g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, val) = if ci < cj {
            let v = a.mul(&row[i].1)?;
            i += 1;
            (ci, v)
        } else if cj < ci {
            let v = b.mul(&pivot[j].1)?.neg();
            j += 1;
            (cj, v)
        } else {
            let v = a.mul(&row[i].1)?.sub(&b.mul(&pivot[j].1)?)?;
            i += 1;
            j += 1;
            (ci, v)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    Some(out)
}

/// Divides out the content and makes the leading entry positive.
fn normalize<T: Scalar>(row: &mut [(usize, T)]) {
    let Some(first) = row.first() else {
        return;
    };
    let mut g = first.1.clone();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if g.is_negative() {
        g = g.neg();
    }
    let flip = row[0].1.is_negative();
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
    if flip {
        for (_, v) in row.iter_mut() {
            *v = v.neg();
        }
    }
}

/// Dense Bareiss elimination over the integers; returns the rank. Pivots are
/// the first nonzero entry of each column in row order.
pub fn bareiss_rank(matrix: &[Vec<i64>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&v| BigInt::from(v)).collect()
        })
        .collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !Zero::is_zero(&m[r][col])) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Converts a dense row to sparse form.
pub fn sparse(row: &[i64]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(c, &v)| (c, v))
        .collect()
}
