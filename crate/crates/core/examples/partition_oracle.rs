//! Brute-force partition sums against the exact series, and the signed
//! counts of partitions into distinct parts.

use qdensity::partitions::{distinct_counts, enumerate, mu_p, Oracle};
use qdensity::pell::classify;
use qdensity::series::smallest_part_series;
use qdensity::subsets::parse;

fn main() {
    println!("partitions of 6 with their Möbius values:");
    for lambda in enumerate(6).unwrap() {
        println!("  {:?} -> {}", lambda.parts(), mu_p(&lambda));
    }

    let spec = parse("1 mod 3").unwrap();
    let series = smallest_part_series(&spec, 30);
    let oracle = Oracle::with_bound(30);
    println!("\nn  oracle  series   (smallest part ≡ 1 mod 3)");
    for n in 0..=30 {
        println!("{n:<3}{:>6}{:>8}", oracle.f_s_coefficient(&spec, n).unwrap(), series.coeff(n as usize));
    }

    println!("\nn   D+odd-D-odd  D+even-D-even  predicted");
    for n in 1..=30 {
        let c = distinct_counts(n).unwrap();
        let p = classify(u64::from(n));
        println!(
            "{n:<4}{:>11}{:>15}   ({}, {})",
            c.odd_difference(),
            c.even_difference(),
            p.odd_prediction,
            p.even_prediction
        );
    }
}
