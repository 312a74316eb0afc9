//! Arithmetic densities of sets of positive integers, computed as limits of
//! partition generating functions.
//!
//! For a set `S` of positive integers let
//!
//! ```text
//! F_S(q) = Σ_{λ : sm(λ) ∈ S} μ*(λ) q^{|λ|}
//! ```
//!
//! where `μ*(λ)` is `0` when `λ` repeats a part and `-(-1)^{ℓ(λ)}` otherwise.
//! As `q → 1` radially, `F_S(q)` tends to the arithmetic density of `S` for
//! residue classes and for sets of integers free of `k`-th prime powers.
//!
//! The crate evaluates `F_S` three independent ways:
//!
//! * [`series`]: exact truncated `q`-expansions with big-integer coefficients,
//! * [`partitions`]: brute-force enumeration of partitions (the oracle),
//! * [`numeric`]: complex floating evaluation inside the unit disk with
//!   rigorous truncation bounds, through either the descending product
//!   recurrence or the roots-of-unity sieve.
//!
//! [`subsets`] parses subset descriptions such as `"1 mod 3"` or `"kfree 2 5"`
//! and computes exact densities; [`pell`] classifies integers that are both
//! squares and generalized pentagonal numbers.

pub mod cli;
pub mod error;
pub mod numeric;
pub mod partitions;
pub mod pell;
pub mod series;
pub mod subsets;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use numeric::{ComplexPoint, EvalOptions, EvalResult, Route};
pub use partitions::Partition;
pub use series::TruncatedSeries;
pub use subsets::{PeriodicReduction, SubsetSpec};
