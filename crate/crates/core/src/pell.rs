//! Solutions of `x² − 6y² = 1` and the square / pentagonal classification
//! behind the distinct-part counting identities.
//!
//! `n² = m(3m−1)/2` rearranges to `(6m−1)² − 6(2n)² = 1`, so integers that
//! are both squares and generalized pentagonal numbers come from the Pell
//! solutions `x_k + y_k√6 = (5 + 2√6)^k`: 1, 100, 9801, ...

use num_bigint::BigInt;
use num_integer::Integer;
use num_integer::Roots;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

/// Generalized pentagonal number `ω(m) = m(3m−1)/2`, for any integer `m`.
pub fn pentagonal(m: i64) -> i64 {
    m * (3 * m - 1) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralizedPentagonal {
    pub index: i64,
}

impl GeneralizedPentagonal {
    pub fn value(&self) -> i64 {
        pentagonal(self.index)
    }
}

/// The index `m` with `ω(m) = n`, if any. Values of `ω` are distinct, so at
/// most one `m` exists.
pub fn pentagonal_index(n: u64) -> Option<i64> {
    // 3m² − m − 2n = 0  ⇒  m = (1 ± √(1 + 24n)) / 6
    let disc = 1u64.checked_add(n.checked_mul(24)?)?;
    let root = integer_sqrt(disc)?;
    let root = root as i64;
    [1 + root, 1 - root].into_iter().find(|v| v % 6 == 0).map(|v| v / 6)
}

fn integer_sqrt(n: u64) -> Option<u64> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// A positive solution of `x² − 6y² = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    pub k: u32,
    #[serde(serialize_with = "as_decimal")]
    pub x: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub y: BigInt,
}

fn as_decimal<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl PellSolution {
    pub fn satisfies_equation(&self) -> bool {
        &self.x * &self.x - BigInt::from(6) * &self.y * &self.y == BigInt::one()
    }

    /// `n = y/2`, the square root side of `n² = ω(m)`.
    pub fn square_root(&self) -> Option<BigInt> {
        self.y.is_even().then(|| &self.y / 2)
    }

    /// `m` with `6m − 1 = ±x`.
    pub fn pentagonal_index(&self) -> Option<BigInt> {
        let r = self.x.mod_floor(&BigInt::from(6));
        if r == BigInt::from(5) {
            Some((&self.x + 1) / 6)
        } else if r.is_one() {
            Some((BigInt::one() - &self.x) / 6)
        } else {
            None
        }
    }

    /// The coincidence `n² = ω(m)` this solution produces.
    pub fn square_pentagonal(&self) -> Option<BigInt> {
        let n = self.square_root()?;
        Some(&n * &n)
    }
}

/// The first `count` positive solutions, from `(5, 2)` via
/// `x' = 5x + 12y`, `y' = 2x + 5y`.
pub fn pell_solutions(count: usize) -> Vec<PellSolution> {
    let mut out = Vec::with_capacity(count);
    let (mut x, mut y) = (BigInt::from(5), BigInt::from(2));
    for k in 1..=count as u32 {
        let next = (BigInt::from(5) * &x + BigInt::from(12) * &y, BigInt::from(2) * &x + BigInt::from(5) * &y);
        out.push(PellSolution { k, x, y });
        (x, y) = next;
    }
    out
}

/// Square / pentagonal status of `n` and the values predicted for
/// `D⁺_odd − D⁻_odd` and `D⁺_even − D⁻_even`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: u64,
    pub square_root: Option<u64>,
    pub pentagonal_index: Option<i64>,
    pub odd_prediction: i8,
    pub even_prediction: i8,
}

impl Classification {
    pub fn is_square(&self) -> bool {
        self.square_root.is_some()
    }

    pub fn is_pentagonal(&self) -> bool {
        self.pentagonal_index.is_some()
    }
}

pub fn classify(n: u64) -> Classification {
    let square_root = if n == 0 { None } else { integer_sqrt(n) };
    let pentagonal_index = if n == 0 { None } else { pentagonal_index(n) };

    let odd_prediction = match square_root {
        Some(r) if r % 2 == 0 => 1,
        Some(_) => -1,
        None => 0,
    };
    let even_prediction = match (square_root, pentagonal_index) {
        (Some(r), None) => {
            if r % 2 == 0 {
                -1
            } else {
                1
            }
        }
        (None, Some(m)) => {
            if m % 2 == 0 {
                1
            } else {
                -1
            }
        }
        // both or neither
        _ => 0,
    };
    Classification { n, square_root, pentagonal_index, odd_prediction, even_prediction }
}

/// Squares that are also generalized pentagonal numbers, up to `limit`, read
/// off the Pell solutions.
pub fn square_pentagonal_numbers(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for sol in pell_solutions(64) {
        let Some(v) = sol.square_pentagonal().and_then(|v| v.to_u64()) else { break };
        if v > limit {
            break;
        }
        if sol.pentagonal_index().is_some() {
            out.push(v);
        }
    }
    out
}
