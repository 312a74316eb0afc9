//! Exact q-expansions: the two theta identities, the duality between the
//! smallest-part and largest-part formulas, and Gauss's product identity.
//!
//! Run with `cargo run --example series_identities -- 40`.

use qdensity::series::{euler_series, largest_part_series, smallest_part_series, theta_series, theta_square_series};
use qdensity::subsets::parse;
use qdensity::TruncatedSeries;

fn show(label: &str, s: &TruncatedSeries, upto: usize) {
    let terms: Vec<String> =
        s.nonzero_terms().take_while(|(i, _)| *i <= upto).map(|(i, c)| format!("{c}q^{i}")).collect();
    println!("{label:>14}: {}", terms.join(" "));
}

fn main() {
    let order: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(40);
    let odd = smallest_part_series(&parse("1 mod 2").unwrap(), order);
    let even = smallest_part_series(&parse("2 mod 2").unwrap(), order);
    let euler = euler_series(order);

    show("F odd", &odd, 30);
    show("F even", &even, 30);
    show("(q;q)∞", &euler, 30);

    let one = TruncatedSeries::one(order);
    println!("F odd = Σ(-1)^(n+1) q^(n²): {}", odd == theta_square_series(order));
    println!("F even = 1 - Σ(-1)^(n+1) q^(n²) - (q;q)∞: {}", even == &(&one - &theta_square_series(order)) - &euler);
    println!("(q;q)∞² = θ(q)(q²;q²)∞: {}", euler.mul(&euler) == theta_series(order).mul(&euler.substitute_q_pow(2)));
    for text in ["1 mod 3", "kfree 2 3"] {
        let spec = parse(text).unwrap();
        println!(
            "smallest-part = largest-part series for {text}: {}",
            smallest_part_series(&spec, order) == largest_part_series(&spec, order)
        );
    }
}
