//! Evaluating F_S(q) as q → 1 along the real axis with both routes, and the
//! distance to the density.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use qdensity::numeric::{f_direct, f_sieve};
use qdensity::subsets::parse;
use qdensity::{ComplexPoint, EvalOptions};

fn main() {
    let opts = EvalOptions::default();
    for text in ["1 mod 3", "kfree 2 5", "kfree 4 5"] {
        let spec = parse(text).unwrap();
        let density = spec.density().unwrap().to_f64().unwrap();
        println!("{text} (density {density:.6})");
        println!("     q      direct F_S(q)     |F - d|     bound   terms   sieve agrees");
        for q in [0.5, 0.8, 0.9, 0.95, 0.98, 0.99] {
            let point = ComplexPoint::real(q).unwrap();
            let d = f_direct(&spec, point, &opts).unwrap();
            // the sieve is O(M·T); skip it for the large kfree 4 5 period
            let sieve = (text != "kfree 4 5").then(|| f_sieve(&spec, point, &opts).unwrap());
            let agrees = sieve
                .map_or("-".to_string(), |s| ((s.value - d.value).norm() <= s.bound + d.bound + 1e-12).to_string());
            println!(
                "  {q:.2}  {:>16.12}  {:>10.3e}  {:>8.1e}  {:>6}   {agrees}",
                d.value.re,
                (d.value - Complex64::new(density, 0.0)).norm(),
                d.bound,
                d.terms_used
            );
        }
    }
}
