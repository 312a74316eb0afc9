//! Brute-force enumeration of integer partitions.
//!
//! This is the ground-truth oracle for coefficient identities. It is
//! deliberately naive and bounded: the default bound of 60 keeps every
//! enumeration under about a million partitions.

use crate::error::{Error, Result};
use crate::subsets::SubsetSpec;

pub const DEFAULT_ORACLE_BOUND: u32 = 60;
/// Hard ceiling on any configured bound; p(100) is about 1.9·10⁸.
pub const MAX_ORACLE_BOUND: u32 = 100;

/// A non-increasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition parts must be non-increasing"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn smallest(&self) -> Option<u32> {
        self.parts.last().copied()
    }

    pub fn largest(&self) -> Option<u32> {
        self.parts.first().copied()
    }

    pub fn has_distinct_parts(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] != w[1])
    }
}

/// Partition Möbius function: 0 with a repeated part, else `(-1)^length`.
pub fn mu_p(lambda: &Partition) -> i8 {
    if !lambda.has_distinct_parts() {
        0
    } else if lambda.length().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Streams the partitions of `n` in descending lexicographic order:
/// `(n)`, `(n-1, 1)`, ..., `(1, ..., 1)`.
#[derive(Debug, Clone)]
pub struct Partitions {
    current: Option<Vec<u32>>,
}

impl Partitions {
    fn new(n: u32) -> Self {
        let first = if n == 0 { Vec::new() } else { vec![n] };
        Partitions { current: Some(first) }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.current.take()?;
        let item = Partition { parts: current.clone() };

        // Successor: drop trailing 1s, decrement the last part > 1, then
        // refill greedily with parts no larger than the decremented one.
        let mut parts = current;
        let mut freed: u32 = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            freed += 1;
        }
        if let Some(last) = parts.last_mut() {
            *last -= 1;
            let cap = *last;
            freed += 1;
            while freed > 0 {
                let take = freed.min(cap);
                parts.push(take);
                freed -= take;
            }
            self.current = Some(parts);
        }
        Some(item)
    }
}

/// Partition statistics for `n` restricted to distinct parts, split by the
/// parity of the number of parts (`plus` = even count) and the parity of the
/// smallest part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DistinctCounts {
    pub odd_plus: u64,
    pub odd_minus: u64,
    pub even_plus: u64,
    pub even_minus: u64,
}

impl DistinctCounts {
    /// `D⁺_odd(n) − D⁻_odd(n)`.
    pub fn odd_difference(&self) -> i64 {
        self.odd_plus as i64 - self.odd_minus as i64
    }

    /// `D⁺_even(n) − D⁻_even(n)`.
    pub fn even_difference(&self) -> i64 {
        self.even_plus as i64 - self.even_minus as i64
    }
}

/// Enumeration with a configurable size bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    bound: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { bound: DEFAULT_ORACLE_BOUND }
    }
}

impl Oracle {
    pub fn with_bound(bound: u32) -> Self {
        Oracle { bound }
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn enumerate(&self, n: u32) -> Result<Partitions> {
        if self.bound > MAX_ORACLE_BOUND {
            return Err(Error::resource(format!("oracle bound {} exceeds the ceiling {MAX_ORACLE_BOUND}", self.bound)));
        }
        if n > self.bound {
            return Err(Error::resource(format!(
                "partition enumeration of {n} exceeds the oracle bound {}",
                self.bound
            )));
        }
        Ok(Partitions::new(n))
    }

    /// `Σ_{λ ⊢ n, sm(λ) ∈ S} −μ_P(λ)`.
    pub fn f_s_coefficient(&self, spec: &SubsetSpec, n: u32) -> Result<i64> {
        let member = spec.membership();
        Ok(self
            .enumerate(n)?
            .filter(|l| l.smallest().is_some_and(|s| member.contains(u64::from(s))))
            .map(|l| -i64::from(mu_p(&l)))
            .sum())
    }

    pub fn distinct_counts(&self, n: u32) -> Result<DistinctCounts> {
        let mut counts = DistinctCounts::default();
        for lambda in self.enumerate(n)?.filter(Partition::has_distinct_parts) {
            let Some(smallest) = lambda.smallest() else { continue };
            let even_length = lambda.length() % 2 == 0;
            let slot = match (smallest % 2 == 1, even_length) {
                (true, true) => &mut counts.odd_plus,
                (true, false) => &mut counts.odd_minus,
                (false, true) => &mut counts.even_plus,
                (false, false) => &mut counts.even_minus,
            };
            *slot += 1;
        }
        Ok(counts)
    }
}

/// Partitions of `n` under the default bound.
pub fn enumerate(n: u32) -> Result<Partitions> {
    Oracle::default().enumerate(n)
}

pub fn f_s_coefficient_oracle(spec: &SubsetSpec, n: u32) -> Result<i64> {
    Oracle::default().f_s_coefficient(spec, n)
}

pub fn distinct_counts(n: u32) -> Result<DistinctCounts> {
    Oracle::default().distinct_counts(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{euler_series, partition_count_series};
    use num_traits::ToPrimitive;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn zero_has_one_partition() {
        let all: Vec<_> = enumerate(0).unwrap().collect();
        assert_eq!(all, vec![Partition::empty()]);
        assert_eq!(all[0].size(), 0);
        assert_eq!(all[0].smallest(), None);
        assert_eq!(all[0].largest(), None);
    }

    #[test]
    fn order_is_descending_lexicographic() {
        let four: Vec<Vec<u32>> = enumerate(4).unwrap().map(|l| l.parts().to_vec()).collect();
        assert_eq!(four, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(enumerate(5).unwrap().count(), 7);
        let three_one = p(&[3, 1]);
        assert_eq!((three_one.smallest(), three_one.largest(), three_one.length()), (Some(1), Some(3), 2));
    }

    #[test]
    fn counts_match_reciprocal_euler_product() {
        let pn = partition_count_series(40);
        for n in 0..=40u32 {
            let count = enumerate(n).unwrap().count() as u64;
            assert_eq!(Some(count), pn.coeff(n as usize).to_u64(), "p({n})");
        }
    }

    #[test]
    fn every_partition_is_valid_and_unique() {
        let all: Vec<Partition> = enumerate(12).unwrap().collect();
        for l in &all {
            assert_eq!(l.size(), 12);
            assert!(Partition::new(l.parts().to_vec()).is_ok());
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn mobius() {
        assert_eq!(mu_p(&p(&[2, 2])), 0);
        assert_eq!(mu_p(&p(&[3, 1])), 1);
        assert_eq!(mu_p(&p(&[4])), -1);
        assert_eq!(mu_p(&Partition::empty()), 1);
    }

    #[test]
    fn mobius_sums_to_euler_series() {
        let euler = euler_series(40);
        for n in 0..=40u32 {
            let sum: i64 = enumerate(n).unwrap().map(|l| i64::from(mu_p(&l))).sum();
            assert_eq!(Some(sum), euler.coeff(n as usize).to_i64(), "n = {n}");
        }
    }

    #[test]
    fn invalid_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
    }

    #[test]
    fn coefficient_oracle() {
        let odd = SubsetSpec::progression(1, 2).unwrap();
        let even = SubsetSpec::progression(0, 2).unwrap();
        assert_eq!(f_s_coefficient_oracle(&odd, 4).unwrap(), -1);
        assert_eq!(f_s_coefficient_oracle(&even, 2).unwrap(), 1);
        for n in 1..10 {
            assert_eq!(f_s_coefficient_oracle(&SubsetSpec::explicit([]), n).unwrap(), 0);
        }
    }

    #[test]
    fn distinct_count_examples() {
        let four = distinct_counts(4).unwrap();
        assert_eq!((four.odd_plus, four.odd_minus, four.even_plus, four.even_minus), (1, 0, 0, 1));
        let one = distinct_counts(1).unwrap();
        assert_eq!((one.odd_plus, one.odd_minus, one.even_plus, one.even_minus), (0, 1, 0, 0));
        assert_eq!(distinct_counts(12).unwrap().even_difference(), -1);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate(61), Err(Error::ResourceLimit(_))));
        assert!(Oracle::with_bound(70).enumerate(61).is_ok());
        assert!(matches!(Oracle::with_bound(500).enumerate(5), Err(Error::ResourceLimit(_))));
        assert!(matches!(f_s_coefficient_oracle(&SubsetSpec::AllPositive, 100), Err(Error::ResourceLimit(_))));
    }
}
