//! Integer power series truncated at a fixed degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// `c_0 + c_1 t + ... + c_K t^K`, with everything above degree `K` dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(degree: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Takes the given coefficients, padding with zeros or truncating to `degree`.
    pub fn from_coeffs<I, T>(degree: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(degree);
        for (i, c) in coeffs.into_iter().enumerate().take(degree + 1) {
            s.coeffs[i] = c.into();
        }
        s
    }

    /// `1 + c t`.
    pub fn linear(degree: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::one(degree);
        if degree >= 1 {
            s.coeffs[1] = c.into();
        }
        s
    }

    /// `(1 - t^k)^e` by the binomial expansion, so `e` may be astronomically
    /// large without cost.
    pub fn one_minus_t_pow(degree: usize, k: usize, e: &BigUint) -> Self {
        assert!(k >= 1);
        let mut s = Self::zero(degree);
        let e = BigInt::from(e.clone());
        let mut binom = BigInt::one();
        let mut j = 0usize;
        while j * k <= degree {
            let term = if j % 2 == 0 { binom.clone() } else { -binom.clone() };
            s.coeffs[j * k] = term;
            // C(e, j+1) = C(e, j) * (e - j) / (j + 1)
            binom = binom * (&e - j) / (j + 1);
            if binom.is_zero() {
                break;
            }
            j += 1;
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Constant term is `±1`.
    pub fn is_unit(&self) -> bool {
        self.coeffs[0].abs().is_one()
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let c0 = &self.coeffs[0];
        let k = self.degree();
        let mut inv = Self::zero(k);
        inv.coeffs[0] = c0.clone();
        for i in 1..=k {
            let mut acc = BigInt::zero();
            for j in 1..=i {
                acc += &self.coeffs[j] * &inv.coeffs[i - j];
            }
            // c0 is ±1, so dividing is multiplying by c0
            inv.coeffs[i] = -(acc * c0);
        }
        Some(inv)
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, exp: i64) -> Option<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    /// Index of the first coefficient where the two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let k = self.degree().min(other.degree());
        (0..=k).find(|&i| self.coeffs[i] != other.coeffs[i])
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        let k = self.degree().min(rhs.degree());
        TruncatedSeries {
            coeffs: (0..=k).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        let k = self.degree().min(rhs.degree());
        TruncatedSeries {
            coeffs: (0..=k).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let k = self.degree().min(rhs.degree());
        let mut out = TruncatedSeries::zero(k);
        for (i, a) in self.coeffs.iter().enumerate().take(k + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(k + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}")?,
            }
            match i {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{i}")?,
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.degree() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(v.len() - 1, v.iter().copied())
    }

    #[test]
    fn binomial_power_matches_repeated_product() {
        let s = TruncatedSeries::one_minus_t_pow(8, 2, &BigUint::from(3u32));
        let base = series(&[1, 0, -1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(s, base.pow(3).unwrap());
        assert_eq!(s.coeffs()[..7], series(&[1, 0, -3, 0, 3, 0, -1]).coeffs()[..]);
    }

    #[test]
    fn inverse_of_one_minus_t() {
        let inv = series(&[1, -1, 0, 0, 0]).inverse().unwrap();
        assert_eq!(inv, series(&[1, 1, 1, 1, 1]));
        assert!(series(&[2, 1]).inverse().is_none());
    }

    #[test]
    fn display() {
        assert_eq!(series(&[1, -3, 0, 2]).to_string(), "1 - 3t + 2t^3 + O(t^4)");
    }

    proptest! {
        #[test]
        fn pow_adds_exponents(c in proptest::collection::vec(-3i64..=3, 6), a in -3i64..=3, b in -3i64..=3) {
            let mut c = c;
            c[0] = 1;
            let s = series(&c);
            let lhs = &s.pow(a).unwrap() * &s.pow(b).unwrap();
            prop_assert_eq!(lhs, s.pow(a + b).unwrap());
        }

        #[test]
        fn multiplication_is_commutative(a in proptest::collection::vec(-5i64..=5, 7), b in proptest::collection::vec(-5i64..=5, 7)) {
            let (a, b) = (series(&a), series(&b));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
