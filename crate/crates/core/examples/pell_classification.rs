//! Squares that are also generalized pentagonal numbers, from x² - 6y² = 1.

use qdensity::pell::{classify, pell_solutions, square_pentagonal_numbers};

fn main() {
    for sol in pell_solutions(6) {
        println!(
            "k = {}: x = {}, y = {}, square pentagonal number {}",
            sol.k,
            sol.x,
            sol.y,
            sol.square_pentagonal().map_or("-".into(), |v| v.to_string())
        );
    }
    println!("\nup to 10^6: {:?}", square_pentagonal_numbers(1_000_000));
    println!("\n   n  square  pentagonal index  predictions");
    for n in [1, 2, 4, 5, 7, 9, 12, 15, 16, 100, 9801] {
        let c = classify(n);
        println!(
            "{n:>5}  {:>6}  {:>16}  ({}, {})",
            c.square_root.map_or("-".into(), |r| r.to_string()),
            c.pentagonal_index.map_or("-".into(), |m| m.to_string()),
            c.odd_prediction,
            c.even_prediction
        );
    }
}
