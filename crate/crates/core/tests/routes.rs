use num_complex::Complex64;
use proptest::prelude::*;

use qdensity::numeric::{f_direct, f_sieve};
use qdensity::series::smallest_part_series;
use qdensity::{ComplexPoint, EvalOptions, SubsetSpec};

fn spec_strategy() -> impl Strategy<Value = SubsetSpec> {
    prop_oneof![
        (1u64..=12).prop_flat_map(|t| (0..t).prop_map(move |r| SubsetSpec::progression(r, t).unwrap())),
        Just(SubsetSpec::kfree(2, 3).unwrap()),
    ]
}

fn point_strategy(max_r: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max_r, 0.0..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direct_and_sieve_agree(spec in spec_strategy(), q in point_strategy(0.9)) {
        let opts = EvalOptions::default();
        let point = ComplexPoint::new(q).unwrap();
        let d = f_direct(&spec, point, &opts).unwrap();
        let s = f_sieve(&spec, point, &opts).unwrap();
        prop_assert!(d.bound <= opts.eps && s.bound <= opts.eps);
        // 1e-12 covers floating point rounding, which the bounds exclude
        prop_assert!((d.value - s.value).norm() <= d.bound + s.bound + 1e-12, "{} vs {}", d.value, s.value);
    }

    #[test]
    fn direct_matches_truncated_series(spec in spec_strategy(), q in point_strategy(0.5)) {
        let series = smallest_part_series(&spec, 60);
        let d = f_direct(&spec, ComplexPoint::new(q).unwrap(), &EvalOptions::default()).unwrap();
        let tail = 2.0 * q.norm().powi(61) / (1.0 - q.norm());
        prop_assert!((d.value - series.eval(q)).norm() <= tail + d.bound + 1e-13);
    }

    #[test]
    fn real_points_give_real_values(spec in spec_strategy(), q in 0.0f64..0.97) {
        let d = f_direct(&spec, ComplexPoint::real(q).unwrap(), &EvalOptions::default()).unwrap();
        prop_assert_eq!(d.value.im, 0.0);
    }
}

#[test]
fn zero_residue_classes_need_the_correction() {
    // the sieve subtracts the spurious n = 0 term for classes of multiples
    let opts = EvalOptions::default();
    for spec in ["0 mod 1", "0 mod 3", "0 mod 4 | 1 mod 6", "kfree 2 2"] {
        let spec = qdensity::subsets::parse(spec).unwrap();
        let q = ComplexPoint::new(Complex64::from_polar(0.8, 0.7)).unwrap();
        let d = f_direct(&spec, q, &opts).unwrap();
        let s = f_sieve(&spec, q, &opts).unwrap();
        assert!((d.value - s.value).norm() < 1e-11, "{spec}");
    }
}

#[test]
fn sieve_refuses_huge_periods_only_when_needed() {
    let spec = SubsetSpec::kfree(4, 5).unwrap();
    let q = ComplexPoint::real(0.9).unwrap();
    // the direct route does not care about the period
    let d = f_direct(&spec, q, &EvalOptions::default()).unwrap();
    assert!((d.value.re - 0.934_926).abs() < 1e-6);
    let big = SubsetSpec::kfree(6, 7).unwrap();
    assert!(matches!(f_sieve(&big, q, &EvalOptions::default()), Err(qdensity::Error::ResourceLimit(_))));
}
