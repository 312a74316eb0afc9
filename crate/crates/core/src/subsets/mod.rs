//! Subsets of the positive integers: residue classes, integers free of
//! `k`-th powers of small primes, and finite unions of those.
//!
//! Every non-explicit [`SubsetSpec`] is periodic, so it reduces to a
//! [`PeriodicReduction`] `(M, residues)` and has an exact rational density.

mod bernoulli;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use bernoulli::{bernoulli, zeta_reciprocal_even, ZetaReciprocal};
pub use parse::parse;

/// Default cap on the period `M` produced by [`SubsetSpec::period_residues`].
pub const DEFAULT_PERIOD_CAP: u64 = 10_000_000;

/// Positive integers `n ≡ r (mod t)`.
///
/// `r = t` is accepted as another name for `r = 0`, so that the even
/// numbers can be written `2 mod 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Progression {
    residue: u64,
    modulus: u64,
}

impl Progression {
    pub fn new(residue: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Semantic("modulus must be at least 1".into()));
        }
        if residue > modulus {
            return Err(Error::Semantic(format!("residue {residue} must not exceed modulus {modulus}")));
        }
        Ok(Progression { residue: residue % modulus, modulus })
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Positive integers not divisible by `p^k` for any prime `p ≤ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KFree {
    power: u32,
    prime_bound: u64,
}

impl KFree {
    pub fn new(power: u32, prime_bound: u64) -> Result<Self> {
        if power < 2 {
            return Err(Error::Semantic(format!("kfree power must be >= 2, got {power}")));
        }
        if prime_bound < 2 {
            return Err(Error::Semantic(format!("kfree prime bound must be >= 2, got {prime_bound}")));
        }
        Ok(KFree { power, prime_bound })
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn prime_bound(&self) -> u64 {
        self.prime_bound
    }

    /// `p^k` for each prime `p ≤ N`; `None` where `p^k` overflows `u64`.
    fn prime_powers(&self) -> Vec<Option<u64>> {
        primes_up_to(self.prime_bound).into_iter().map(|p| p.checked_pow(self.power)).collect()
    }
}

/// A subset of the positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SubsetSpec {
    Progression(Progression),
    KFree(KFree),
    UnionOf(Vec<SubsetSpec>),
    AllPositive,
    /// A finite set, used in tests. It has no periodic reduction.
    Explicit(BTreeSet<u64>),
}

impl SubsetSpec {
    pub fn progression(residue: u64, modulus: u64) -> Result<Self> {
        Progression::new(residue, modulus).map(SubsetSpec::Progression)
    }

    pub fn kfree(power: u32, prime_bound: u64) -> Result<Self> {
        KFree::new(power, prime_bound).map(SubsetSpec::KFree)
    }

    pub fn explicit(members: impl IntoIterator<Item = u64>) -> Self {
        SubsetSpec::Explicit(members.into_iter().collect())
    }

    /// `n ∈ S`. Zero is rejected: subsets live in the positive integers.
    pub fn contains(&self, n: u64) -> Result<bool> {
        if n == 0 {
            return Err(Error::invalid("membership is defined for n >= 1"));
        }
        Ok(self.membership().contains(n))
    }

    /// A compiled membership test, cheap to query repeatedly.
    pub fn membership(&self) -> Membership {
        match self {
            SubsetSpec::Progression(p) => Membership::Progression(*p),
            SubsetSpec::KFree(k) => Membership::KFree(k.prime_powers().into_iter().flatten().collect()),
            SubsetSpec::UnionOf(parts) => Membership::Union(parts.iter().map(SubsetSpec::membership).collect()),
            SubsetSpec::AllPositive => Membership::All,
            SubsetSpec::Explicit(set) => Membership::Explicit(set.clone()),
        }
    }

    /// Reduction to `(M, residues)` with the default period cap.
    pub fn period_residues(&self) -> Result<PeriodicReduction> {
        self.period_residues_with_cap(DEFAULT_PERIOD_CAP)
    }

    pub fn period_residues_with_cap(&self, cap: u64) -> Result<PeriodicReduction> {
        let period = self.period()?;
        if period > cap {
            return Err(Error::resource(format!(
                "period {period} exceeds the cap {cap}; use the direct route, which only needs membership"
            )));
        }
        let member = self.membership();
        // residue 0 stands for the class of M itself
        let residues = (0..period).filter(|&r| member.contains(if r == 0 { period } else { r })).collect();
        Ok(PeriodicReduction { period, residues })
    }

    fn period(&self) -> Result<u64> {
        let overflow = || Error::resource("period overflows 64-bit integers");
        match self {
            SubsetSpec::Progression(p) => Ok(p.modulus),
            SubsetSpec::KFree(k) => k
                .prime_powers()
                .into_iter()
                .try_fold(1u64, |acc, pk| pk.and_then(|pk| acc.checked_mul(pk)))
                .ok_or_else(overflow),
            SubsetSpec::AllPositive => Ok(1),
            SubsetSpec::UnionOf(parts) => parts.iter().try_fold(1u64, |acc, part| {
                let m = part.period()?;
                let g = acc.gcd(&m);
                (acc / g).checked_mul(m).ok_or_else(overflow)
            }),
            SubsetSpec::Explicit(_) => Err(Error::invalid("explicit finite sets have no periodic reduction")),
        }
    }

    /// Exact arithmetic density. Finite explicit sets have density 0.
    pub fn density(&self) -> Result<BigRational> {
        match self {
            SubsetSpec::Progression(p) => Ok(BigRational::new(BigInt::one(), BigInt::from(p.modulus))),
            SubsetSpec::KFree(k) => Ok(primes_up_to(k.prime_bound)
                .into_iter()
                .map(|p| {
                    let pk = num_traits::pow(BigInt::from(p), k.power as usize);
                    BigRational::new(&pk - 1, pk)
                })
                .product()),
            SubsetSpec::AllPositive => Ok(BigRational::one()),
            SubsetSpec::UnionOf(_) => Ok(self.period_residues()?.density()),
            SubsetSpec::Explicit(_) => Ok(BigRational::zero()),
        }
    }
}

impl fmt::Display for SubsetSpec {
    /// Canonical DSL rendering; [`parse`] inverts it.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetSpec::Progression(p) => write!(f, "{} mod {}", p.residue, p.modulus),
            SubsetSpec::KFree(k) => write!(f, "kfree {} {}", k.power, k.prime_bound),
            SubsetSpec::AllPositive => f.write_str("all"),
            SubsetSpec::UnionOf(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" | ")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
            SubsetSpec::Explicit(set) => {
                let items: Vec<String> = set.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
        }
    }
}

/// Precomputed membership predicate for a [`SubsetSpec`].
#[derive(Debug, Clone)]
pub enum Membership {
    Progression(Progression),
    KFree(Vec<u64>),
    Union(Vec<Membership>),
    All,
    Explicit(BTreeSet<u64>),
}

impl Membership {
    pub fn contains(&self, n: u64) -> bool {
        match self {
            Membership::Progression(p) => n % p.modulus == p.residue,
            Membership::KFree(powers) => powers.iter().all(|pk| !n.is_multiple_of(*pk)),
            Membership::Union(parts) => parts.iter().any(|m| m.contains(n)),
            Membership::All => true,
            Membership::Explicit(set) => set.contains(&n),
        }
    }
}

/// `S` as a union of residue classes modulo `M`.
///
/// Residue `0` represents the class of multiples of `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicReduction {
    period: u64,
    residues: Vec<u64>,
}

impl PeriodicReduction {
    pub fn period(&self) -> u64 {
        self.period
    }

    /// Sorted, de-duplicated residues in `[0, M)`.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn contains(&self, n: u64) -> bool {
        self.residues.binary_search(&(n % self.period)).is_ok()
    }

    pub fn density(&self) -> BigRational {
        BigRational::new(BigInt::from(self.residues.len()), BigInt::from(self.period))
    }
}

/// Primes `p ≤ bound`, by a plain sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn kfree_membership() {
        let s = SubsetSpec::kfree(2, 5).unwrap();
        assert!(s.contains(10).unwrap());
        assert!(!s.contains(12).unwrap());
        assert!(!s.contains(27).unwrap());
        // 7² is not tested when N = 5
        assert!(s.contains(49).unwrap());
        let listed: Vec<u64> = (1..=13).filter(|&n| SubsetSpec::kfree(2, 13).unwrap().contains(n).unwrap()).collect();
        assert_eq!(listed, vec![1, 2, 3, 5, 6, 7, 10, 11, 13]);
    }

    #[test]
    fn progression_membership_and_zero() {
        let s = SubsetSpec::progression(1, 2).unwrap();
        assert!(s.contains(7).unwrap());
        assert!(!s.contains(8).unwrap());
        assert!(matches!(s.contains(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn constructors_reject_bad_parameters() {
        assert!(SubsetSpec::progression(3, 2).is_err());
        assert_eq!(SubsetSpec::progression(2, 2).unwrap(), SubsetSpec::progression(0, 2).unwrap());
        assert!(SubsetSpec::progression(0, 0).is_err());
        assert!(SubsetSpec::kfree(1, 5).is_err());
        assert!(SubsetSpec::kfree(2, 1).is_err());
    }

    #[test]
    fn reductions() {
        let r = SubsetSpec::progression(1, 3).unwrap().period_residues().unwrap();
        assert_eq!((r.period(), r.residues()), (3, &[1u64][..]));

        let r = SubsetSpec::kfree(2, 3).unwrap().period_residues().unwrap();
        let brute = (0..36u64).filter(|r| r % 4 != 0 && r % 9 != 0).count();
        assert_eq!(r.period(), 36);
        assert_eq!(r.residues().len(), brute);
        assert_eq!(brute, 24);

        let r = SubsetSpec::kfree(2, 5).unwrap().period_residues().unwrap();
        assert_eq!((r.period(), r.residues().len()), (900, 576));
    }

    #[test]
    fn period_cap() {
        let s = SubsetSpec::kfree(4, 5).unwrap();
        assert_eq!(s.period_residues().unwrap().period(), 810_000);
        assert!(matches!(s.period_residues_with_cap(1000), Err(Error::ResourceLimit(_))));
        let huge = SubsetSpec::kfree(2, 40).unwrap();
        assert!(matches!(huge.period_residues(), Err(Error::ResourceLimit(_))));
        assert!(SubsetSpec::explicit([1, 2]).period_residues().is_err());
    }

    #[test]
    fn densities() {
        assert_eq!(SubsetSpec::progression(1, 3).unwrap().density().unwrap(), ratio(1, 3));
        assert_eq!(SubsetSpec::kfree(2, 5).unwrap().density().unwrap(), ratio(16, 25));
        assert_eq!(SubsetSpec::kfree(4, 5).unwrap().density().unwrap(), ratio(208, 225));
        assert_eq!(SubsetSpec::AllPositive.density().unwrap(), ratio(1, 1));
        assert_eq!(parse("0 mod 4 | 3 mod 4").unwrap().density().unwrap(), ratio(1, 2));
        assert_eq!(parse("1 mod 2 | 0 mod 2").unwrap().density().unwrap(), ratio(1, 1));
        // overlapping classes are merged, not double counted
        assert_eq!(parse("1 mod 2 | 1 mod 4").unwrap().density().unwrap(), ratio(1, 2));
    }

    #[test]
    fn union_reduction_uses_lcm() {
        let r = parse("1 mod 4 | 2 mod 6").unwrap().period_residues().unwrap();
        assert_eq!(r.period(), 12);
        assert_eq!(r.residues(), &[1, 2, 5, 8, 9]);
    }

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(primes_up_to(1).is_empty());
    }

    fn arb_spec() -> impl Strategy<Value = SubsetSpec> {
        let prog =
            (1u64..13).prop_flat_map(|t| (0..t, Just(t))).prop_map(|(r, t)| SubsetSpec::progression(r, t).unwrap());
        let kfree = (2u32..4, 2u64..6).prop_map(|(k, n)| SubsetSpec::kfree(k, n).unwrap());
        let leaf = prop_oneof![prog, kfree, Just(SubsetSpec::AllPositive)];
        prop_oneof![leaf.clone(), prop::collection::vec(leaf, 2..4).prop_map(SubsetSpec::UnionOf),]
    }

    proptest! {
        #[test]
        fn reduction_matches_membership(spec in arb_spec()) {
            let red = spec.period_residues_with_cap(2_000_000).unwrap();
            let member = spec.membership();
            for n in 1..=10_000u64 {
                prop_assert_eq!(member.contains(n), red.contains(n));
            }
            prop_assert_eq!(spec.density().unwrap(), red.density());
        }

        #[test]
        fn render_then_parse_is_identity(spec in arb_spec()) {
            prop_assert_eq!(parse(&spec.to_string()).unwrap(), spec);
        }
    }
}
