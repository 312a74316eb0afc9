//! Parsing subset descriptions, reducing them to residue classes and
//! computing exact densities.
//!
//! `cargo run --example subset_density -- "kfree 2 5" "1 mod 4 | 2 mod 6"`

use qdensity::subsets::{parse, zeta_reciprocal_even, SubsetSpec};

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() {
        args =
            ["1 mod 3", "kfree 2 5", "kfree 4 5", "1 mod 4 | 2 mod 6", "0 mod 2 | 1 mod 2"].map(String::from).to_vec();
    }
    for text in &args {
        let spec = match parse(text) {
            Ok(spec) => spec,
            Err(e) => {
                eprintln!("{text}: {e}");
                continue;
            }
        };
        let red = spec.period_residues().unwrap();
        let first: Vec<u64> = (1..=40).filter(|&n| spec.contains(n).unwrap()).collect();
        println!("{spec}");
        println!("  period {} with {} residues, density {}", red.period(), red.residues().len(), red.density());
        println!("  members up to 40: {first:?}");
        if let SubsetSpec::KFree(k) = &spec {
            if k.power() % 2 == 0 {
                let z = zeta_reciprocal_even(k.power()).unwrap();
                println!("  as N grows the density tends to {}/π^{} ≈ {:.6}", z.coefficient, z.k, z.value);
            }
        }
    }
}
