//! Truncated power series in `q` with exact big-integer coefficients.
//!
//! A series of order `N` stores the coefficients of `q^0..=q^N`; everything
//! beyond is unknown. Binary operations return the smaller of the two orders.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pell::pentagonal;
use crate::subsets::SubsetSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, BigInt::one(), order)
    }

    /// `c·q^exp`, or the zero series when `exp > order`.
    pub fn monomial(exp: usize, c: BigInt, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c;
        }
        s
    }

    /// Series whose order is `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        TruncatedSeries { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().copied().map(BigInt::from).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^i`. Panics when `i > order`.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `(exponent, coefficient)` for every nonzero coefficient.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Drop coefficients above `order`. Orders are never extended.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order());
        TruncatedSeries { coeffs: self.coeffs[..=keep].to_vec() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = Self::zero(order);
        let rhs: Vec<(usize, &BigInt)> =
            other.coeffs[..=order].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                if i + j > order {
                    break;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let order = self.order().min(other.order());
        TruncatedSeries { coeffs: (0..=order).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect() }
    }

    /// `a·(1 − q^n)`.
    pub fn mul_one_minus_q_pow(&self, n: usize) -> Self {
        let mut c = self.coeffs.clone();
        sub_shifted_in_place(&mut c, n);
        TruncatedSeries { coeffs: c }
    }

    /// `a / (1 − q^n)` via `c_i ← c_i + c_{i−n}` for ascending `i`.
    pub fn divide_by_one_minus_q_pow(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("1 - q^0 is the zero series and cannot be inverted"));
        }
        let mut c = self.coeffs.clone();
        add_shifted_in_place(&mut c, n);
        Ok(TruncatedSeries { coeffs: c })
    }

    /// The substitution `q → q^k`, keeping the same order.
    pub fn substitute_q_pow(&self, k: usize) -> Self {
        assert!(k >= 1, "substitution exponent must be positive");
        let mut out = Self::zero(self.order());
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(k) {
                Some(j) if j <= self.order() => out.coeffs[j] = c.clone(),
                _ => break,
            }
        }
        out
    }

    /// The truncated polynomial evaluated at `q` (Horner).
    pub fn eval(&self, q: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::zero(), |acc, c| acc * q + c.to_f64().unwrap_or(f64::NAN))
    }
}

// c_i ← c_i − c_{i−n}, descending so each step reads an unmodified value.
fn sub_shifted_in_place(c: &mut [BigInt], n: usize) {
    for i in (n..c.len()).rev() {
        let (lo, hi) = c.split_at_mut(i);
        hi[0] -= &lo[i - n];
    }
}

// c_i ← c_i + c_{i−n}, ascending so each step reads an updated value.
fn add_shifted_in_place(c: &mut [BigInt], n: usize) {
    for i in n..c.len() {
        let (lo, hi) = c.split_at_mut(i);
        hi[0] += &lo[i - n];
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        TruncatedSeries::mul(self, rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.coeffs.iter().map(BigInt::to_string))
    }
}

impl<'de> Deserialize<'de> for TruncatedSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<String>::deserialize(deserializer)?;
        if raw.is_empty() {
            return Err(D::Error::custom("a truncated series has at least one coefficient"));
        }
        let coeffs = raw
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(TruncatedSeries { coeffs })
    }
}

/// `(q;q)_∞` to order `N` from the pentagonal number theorem:
/// `Σ_m (−1)^m q^{m(3m−1)/2}`.
pub fn euler_series(order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    s.coeffs[0] = BigInt::one();
    for m in 1i64.. {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let lo = pentagonal(m) as usize;
        if lo > order {
            break;
        }
        s.coeffs[lo] += sign;
        let hi = pentagonal(-m) as usize;
        if hi <= order {
            s.coeffs[hi] += sign;
        }
    }
    s
}

/// `Σ_{n≥1} (−1)^{n+1} q^{n²}`.
pub fn theta_square_series(order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    for n in 1usize.. {
        if n * n > order {
            break;
        }
        s.coeffs[n * n] = BigInt::from(if n % 2 == 1 { 1 } else { -1 });
    }
    s
}

/// `1 + 2 Σ_{n≥1} (−1)^n q^{n²}`.
pub fn theta_series(order: usize) -> TruncatedSeries {
    let t = theta_square_series(order);
    let two = BigInt::from(2);
    &TruncatedSeries::one(order) - &TruncatedSeries { coeffs: t.coeffs.iter().map(|c| c * &two).collect() }
}

/// `∏_{n≥1} 1/(1 − q^n)`, the partition-counting series.
pub fn partition_count_series(order: usize) -> TruncatedSeries {
    let mut c = TruncatedSeries::one(order).coeffs;
    for n in 1..=order {
        add_shifted_in_place(&mut c, n);
    }
    TruncatedSeries { coeffs: c }
}

/// `F_S(q) = Σ_{n∈S} q^n ∏_{m>n}(1 − q^m)` to order `N`.
///
/// Keeps the tail product `P_n = ∏_{m>n}(1 − q^m)` and walks `n` downward
/// with `P_{n−1} = (1 − q^n)·P_n`, starting from `P_N ≡ 1`.
pub fn smallest_part_series(spec: &SubsetSpec, order: usize) -> TruncatedSeries {
    let member = spec.membership();
    let mut acc = vec![BigInt::zero(); order + 1];
    let mut tail = TruncatedSeries::one(order).coeffs;
    for n in (1..=order).rev() {
        if member.contains(n as u64) {
            for (i, c) in tail[..=order - n].iter().enumerate() {
                if !c.is_zero() {
                    acc[i + n] += c;
                }
            }
        }
        sub_shifted_in_place(&mut tail, n);
    }
    TruncatedSeries { coeffs: acc }
}

/// The same series by the dual route `(q;q)_∞ · Σ_{n∈S} q^n/(q;q)_n`.
pub fn largest_part_series(spec: &SubsetSpec, order: usize) -> TruncatedSeries {
    let member = spec.membership();
    let mut sum = vec![BigInt::zero(); order + 1];
    // q^n/(q;q)_n, maintained incrementally
    let mut term = TruncatedSeries::one(order).coeffs;
    for n in 1..=order {
        term.rotate_right(1);
        term[0] = BigInt::zero();
        add_shifted_in_place(&mut term, n);
        if member.contains(n as u64) {
            for (s, t) in sum.iter_mut().zip(&term).skip(n) {
                *s += t;
            }
        }
    }
    euler_series(order).mul(&TruncatedSeries { coeffs: sum })
}
