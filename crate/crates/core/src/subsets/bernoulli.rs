use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Bernoulli numbers `B_0..=B_k`, with `B_1 = -1/2`.
///
/// Uses `Σ_{j=0}^{m} C(m+1, j) B_j = 0` in exact rational arithmetic.
pub fn bernoulli(k: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(k + 1);
    b.push(BigRational::one());
    for m in 1..=k {
        // binomials C(m+1, j) for j = 0..m, built incrementally
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// `1/ζ(k) = coefficient / π^k` for even `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaReciprocal {
    pub k: u32,
    pub coefficient: BigRational,
    pub value: f64,
}

/// Exact `c = (-1)^{k/2+1} k! / (B_k 2^{k-1})` with `1/ζ(k) = c/π^k`.
pub fn zeta_reciprocal_even(k: u32) -> Result<ZetaReciprocal> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::invalid(format!("the Bernoulli closed form needs an even k >= 2, got {k}")));
    }
    let bk = bernoulli(k as usize).pop().expect("non-empty");
    let factorial: BigInt = (1..=k).map(BigInt::from).product();
    let two_pow = num_traits::pow(BigInt::from(2), (k - 1) as usize);
    let mut c = BigRational::from_integer(factorial) / (bk * BigRational::from_integer(two_pow));
    if (k / 2).is_multiple_of(2) {
        c = -c;
    }
    debug_assert!(c.is_positive());
    let value = c.to_f64().unwrap_or(f64::NAN) / PI.powi(k as i32);
    Ok(ZetaReciprocal { k, coefficient: c, value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::primes_up_to;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_bernoulli_numbers() {
        let b = bernoulli(12);
        assert_eq!(b[0], r(1, 1));
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[6], r(1, 42));
        assert_eq!(b[12], r(-691, 2730));
        for k in (3..=11).step_by(2) {
            assert!(b[k].is_zero(), "B_{k} should vanish");
        }
    }

    #[test]
    fn closed_form_coefficients() {
        assert_eq!(zeta_reciprocal_even(2).unwrap().coefficient, r(6, 1));
        assert_eq!(zeta_reciprocal_even(4).unwrap().coefficient, r(90, 1));
        assert_eq!(zeta_reciprocal_even(6).unwrap().coefficient, r(945, 1));
        assert_eq!(zeta_reciprocal_even(8).unwrap().coefficient, r(9450, 1));
        assert!((zeta_reciprocal_even(2).unwrap().value - 0.607_927_1).abs() < 1e-7);
        assert!((zeta_reciprocal_even(4).unwrap().value - 0.923_938_4).abs() < 1e-7);
    }

    #[test]
    fn odd_or_small_k_rejected() {
        assert!(zeta_reciprocal_even(3).is_err());
        assert!(zeta_reciprocal_even(0).is_err());
    }

    #[test]
    fn agrees_with_truncated_euler_product() {
        let primes = primes_up_to(1_000_000);
        for k in [2u32, 4, 6] {
            let product: f64 = primes.iter().map(|&p| 1.0 - (p as f64).powi(-(k as i32))).product();
            let closed = zeta_reciprocal_even(k).unwrap().value;
            assert!((closed - product).abs() < 1e-6, "k = {k}: {closed} vs {product}");
        }
    }
}
