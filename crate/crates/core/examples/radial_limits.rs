//! Radial sequences toward roots of unity, including the map q = exp(-2πi/z).

use num_complex::Complex64;
use qdensity::numeric::{f_direct, geometric_radii, q_of_z, radial_sequence, RootOfUnity, DEFAULT_RADII};
use qdensity::subsets::parse;
use qdensity::{EvalOptions, Route};

fn main() {
    let opts = EvalOptions::default().with_eps(1e-10);
    let spec = parse("1 mod 3").unwrap();
    let radii: Vec<f64> = geometric_radii(DEFAULT_RADII).into_iter().take(10).collect();

    for (h, m) in [(0, 1), (1, 4), (1, 5), (1, 3)] {
        let root = RootOfUnity::new(h, m).unwrap();
        println!("1 mod 3 toward e^(2πi·{h}/{m}):");
        let seq = radial_sequence(&spec, root, &radii, Route::Direct, &opts).unwrap();
        for (r, value) in radii.iter().zip(seq) {
            match value {
                Ok(v) => println!("  r = {r:.6}  F = {:.9} {:+.9}i", v.value.re, v.value.im),
                Err(e) => println!("  r = {r:.6}  {e}"),
            }
        }
    }

    println!("\n1 mod 2 at q(z) = exp(-2πi/z), z = 1 + εi:");
    let odd = parse("1 mod 2").unwrap();
    for k in (1..=10).rev() {
        let eps = k as f64 / 100.0;
        let q = q_of_z(Complex64::new(1.0, eps)).unwrap();
        let v = f_direct(&odd, q, &opts).unwrap();
        println!("  ε = {eps:.2}  |q| = {:.6}  F = {:.9} {:+.3e}i", q.modulus(), v.value.re, v.value.im);
    }
}
