//! Scalar fields the matrices are generic over.
//!
//! Two fields are provided: the rationals (arbitrary precision, always
//! reduced) and GF(2). Determinants and ranks dispatch through the
//! [`Field`] trait so each field can use its own elimination kernel.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::gf2;

/// Exact rational number; numerator and denominator are kept coprime with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "GF2")]
    Gf2,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => f.write_str("Q"),
            FieldTag::Gf2 => f.write_str("GF2"),
        }
    }
}

pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Hash
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const TAG: FieldTag;

    fn inverse(&self) -> Option<Self>;

    /// Image of an integer under the canonical ring map.
    fn from_i64(v: i64) -> Self;

    fn parse_entry(s: &str) -> Option<Self>;

    /// Determinant of a dense row-major `n x n` grid.
    fn det(n: usize, data: &[Self]) -> Self {
        gaussian_det(n, data)
    }

    /// Rank of a dense row-major `rows x cols` grid.
    fn rank(rows: usize, cols: usize, data: &[Self]) -> usize {
        gaussian_rank(rows, cols, data)
    }
}

impl Field for Rational {
    const TAG: FieldTag = FieldTag::Rational;

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn parse_entry(s: &str) -> Option<Self> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().ok()?;
        let den: BigInt = den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(num, den))
    }

    fn det(n: usize, data: &[Self]) -> Self {
        rational_det_bareiss(n, data)
    }
}

/// Element of the two-element field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2(pub bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);

    pub fn bit(self) -> bool {
        self.0
    }
}

impl fmt::Debug for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u8::from(self.0))
    }
}

impl From<bool> for Gf2 {
    fn from(b: bool) -> Self {
        Gf2(b)
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Div for Gf2 {
    type Output = Gf2;
    fn div(self, rhs: Gf2) -> Gf2 {
        assert!(rhs.0, "division by zero in GF(2)");
        self
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl Zero for Gf2 {
    fn zero() -> Self {
        Gf2::ZERO
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for Gf2 {
    fn one() -> Self {
        Gf2::ONE
    }
}

impl Field for Gf2 {
    const TAG: FieldTag = FieldTag::Gf2;

    fn inverse(&self) -> Option<Self> {
        self.0.then_some(*self)
    }

    fn from_i64(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }

    fn parse_entry(s: &str) -> Option<Self> {
        match s {
            "0" => Some(Gf2::ZERO),
            "1" => Some(Gf2::ONE),
            _ => None,
        }
    }

    fn det(n: usize, data: &[Self]) -> Self {
        Gf2(gf2::BitMatrix::from_dense(n, n, data).rank() == n)
    }

    fn rank(rows: usize, cols: usize, data: &[Self]) -> usize {
        gf2::BitMatrix::from_dense(rows, cols, data).rank()
    }
}

/// Plain Gaussian elimination over an arbitrary field.
pub fn gaussian_det<F: Field>(n: usize, data: &[F]) -> F {
    let mut a = data.to_vec();
    let mut det = F::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
            return F::zero();
        };
        if p != k {
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        det = det * pivot.clone();
        let inv = pivot.inverse().expect("nonzero pivot");
        for i in k + 1..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            let f = a[i * n + k].clone() * inv.clone();
            for j in k..n {
                let v = a[i * n + j].clone() - f.clone() * a[k * n + j].clone();
                a[i * n + j] = v;
            }
        }
    }
    det
}

pub fn gaussian_rank<F: Field>(rows: usize, cols: usize, data: &[F]) -> usize {
    let mut a = data.to_vec();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
        }
        let inv = a[rank * cols + c].inverse().expect("nonzero pivot");
        for i in rank + 1..rows {
            if a[i * cols + c].is_zero() {
                continue;
            }
            let f = a[i * cols + c].clone() * inv.clone();
            for j in c..cols {
                let v = a[i * cols + j].clone() - f.clone() * a[rank * cols + j].clone();
                a[i * cols + j] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free determinant: every row is scaled to integers by the lcm of
/// its denominators, Bareiss elimination runs over `BigInt`, and the scaling
/// is divided back out.
pub fn rational_det_bareiss(n: usize, data: &[Rational]) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<BigInt> = Vec::with_capacity(n * n);
    for i in 0..n {
        let row = &data[i * n..(i + 1) * n];
        let l = row
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        for x in row {
            a.push(x.numer() * (&l / x.denom()));
        }
        scale *= l;
    }
    Rational::new(bareiss_bigint(n, &mut a), scale)
}

/// Bareiss elimination in place; returns the determinant.
pub fn bareiss_bigint(n: usize, a: &mut [BigInt]) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                a[i * n + j] = v;
            }
        }
        prev = a[k * n + k].clone();
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Bareiss over machine integers. Callers guarantee every minor fits in
/// `i64` (true for `{0, ±1}` matrices up to 25x25 by Hadamard's bound).
pub(crate) fn bareiss_i64(n: usize, a: &mut [i64]) -> i64 {
    if n == 0 {
        return 1;
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i * n + k] != 0) else {
                return 0;
            };
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k] as i128;
        for i in k + 1..n {
            let lead = a[i * n + k] as i128;
            for j in k + 1..n {
                let v = (a[i * n + j] as i128 * pivot - lead * a[k * n + j] as i128) / prev;
                a[i * n + j] = v as i64;
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1];
    if negate {
        -d
    } else {
        d
    }
}

/// `Some(v)` when the rational is an integer fitting in `i64`.
pub fn to_i64_exact(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn is_unit_or_zero(q: &Rational) -> bool {
    q.is_zero() || q.abs().is_one()
}

pub fn rat(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// `num/den` as a reduced rational. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_normalizes() {
        assert_eq!(Rational::parse_entry("-3/6"), Some(frac(-1, 2)));
        assert_eq!(Rational::parse_entry("4/-2"), Some(rat(-2)));
        assert_eq!(Rational::parse_entry("1/0"), None);
        assert_eq!(Rational::parse_entry("x"), None);
        assert_eq!(Gf2::parse_entry("2"), None);
    }

    #[test]
    fn bareiss_matches_gaussian() {
        let data: Vec<Rational> = [1, 2, 3, 4, 5, 6, 7, 8, 10].iter().map(|&v| rat(v)).collect();
        assert_eq!(rational_det_bareiss(3, &data), rat(-3));
        assert_eq!(gaussian_det(3, &data), rat(-3));
        let mut ints = vec![1, 2, 3, 4, 5, 6, 7, 8, 10];
        assert_eq!(bareiss_i64(3, &mut ints), -3);
    }

    #[test]
    fn fractional_det() {
        let data = vec![frac(1, 2), frac(1, 3), frac(1, 4), frac(1, 5)];
        assert_eq!(rational_det_bareiss(2, &data), frac(1, 10) - frac(1, 12));
    }

    #[test]
    fn gf2_arith() {
        assert_eq!(Gf2::ONE + Gf2::ONE, Gf2::ZERO);
        assert_eq!(-Gf2::ONE, Gf2::ONE);
        assert_eq!(Gf2::from_i64(-3), Gf2::ONE);
        assert_eq!(Gf2::ZERO.inverse(), None);
    }
}
