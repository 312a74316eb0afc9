use num_complex::Complex64;
use num_integer::Integer;

use super::scalar::Scalar;
use super::{ComplexPoint, EvalOptions, EvalResult, Route};
use crate::error::{Error, Result};
use crate::subsets::SubsetSpec;

/// Default number of radii in [`geometric_radii`].
pub const DEFAULT_RADII: usize = 20;

/// `q(z) = exp(−2πi/z)` for `Im z > 0`.
pub fn q_of_z(z: Complex64) -> Result<ComplexPoint> {
    if !z.re.is_finite() || !z.im.is_finite() || z.im <= 0.0 {
        return Err(Error::invalid(format!("z = {z} must have positive imaginary part")));
    }
    let w = Complex64::new(0.0, -std::f64::consts::TAU) / z;
    ComplexPoint::new(w.exp())
}

/// The primitive root of unity `ζ = e^{2πih/m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootOfUnity {
    numerator: u64,
    denominator: u64,
}

impl RootOfUnity {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::invalid("root of unity order must be positive"));
        }
        let numerator = numerator % denominator;
        if numerator.gcd(&denominator) != 1 {
            return Err(Error::invalid(format!(
                "e^(2πi·{numerator}/{denominator}) is not primitive: gcd({numerator}, {denominator}) ≠ 1"
            )));
        }
        Ok(RootOfUnity { numerator, denominator })
    }

    pub fn one() -> Self {
        RootOfUnity { numerator: 0, denominator: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn order(&self) -> u64 {
        self.denominator
    }

    pub fn value(&self) -> Complex64 {
        <Complex64 as Scalar>::root_of_unity((), self.numerator, self.denominator)
    }
}

/// `1 − 2^{−j}` for `j = 1..=count`.
pub fn geometric_radii(count: usize) -> Vec<f64> {
    (1..=count as i32).map(|j| 1.0 - 2f64.powi(-j)).collect()
}

/// `F_S(r·ζ)` for each radius. An invalid radius fails the whole call;
/// evaluation failures are reported per entry.
pub fn radial_sequence(
    spec: &SubsetSpec,
    root: RootOfUnity,
    radii: &[f64],
    route: Route,
    opts: &EvalOptions,
) -> Result<Vec<Result<EvalResult>>> {
    opts.validate()?;
    if let Some(bad) = radii.iter().find(|r| !(**r > 0.0 && **r < 1.0)) {
        return Err(Error::invalid(format!("radius {bad} must lie in (0, 1)")));
    }
    let zeta = root.value();
    Ok(radii.iter().map(|&r| ComplexPoint::new(zeta * r).and_then(|q| route.evaluate(spec, q, opts))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{pochhammer_inf, pochhammer_ratio};

    #[test]
    fn z_to_q() {
        let q = q_of_z(Complex64::new(0.0, 1.0)).unwrap();
        assert!((q.value() - Complex64::new((-std::f64::consts::TAU).exp(), 0.0)).norm() < 1e-15);
        assert!((q.value().re - 0.001_867_44).abs() < 1e-8);
        assert!(q_of_z(Complex64::new(1.0, 0.0)).is_err());
        assert!(q_of_z(Complex64::new(1.0, -0.1)).is_err());
        assert!(q_of_z(Complex64::new(1.0, 0.01)).unwrap().modulus() < 1.0);
    }

    #[test]
    fn roots() {
        assert!(RootOfUnity::new(2, 4).is_err());
        assert!(RootOfUnity::new(1, 0).is_err());
        assert_eq!(RootOfUnity::new(1, 4).unwrap().value(), Complex64::new(0.0, 1.0));
        assert_eq!(RootOfUnity::one().value(), Complex64::new(1.0, 0.0));
        assert_eq!(RootOfUnity::new(5, 4).unwrap().numerator(), 1);
    }

    #[test]
    fn radii_preset() {
        let r = geometric_radii(DEFAULT_RADII);
        assert_eq!(r.len(), 20);
        assert_eq!(r[0], 0.5);
        assert!(r.windows(2).all(|w| w[0] < w[1]));
        assert!(r[19] < 1.0);
    }

    #[test]
    fn one_third_along_the_real_axis() {
        let spec = SubsetSpec::progression(1, 3).unwrap();
        let seq =
            radial_sequence(&spec, RootOfUnity::one(), &[0.90, 0.95], Route::Direct, &EvalOptions::default()).unwrap();
        let v: Vec<f64> = seq.into_iter().map(|r| r.unwrap().value.re).collect();
        assert!((v[0] - 0.333_333_329).abs() < 1e-9);
        assert!((v[1] - 0.333_333_333).abs() < 1e-9);
    }

    #[test]
    fn per_point_errors() {
        let opts = EvalOptions::default().with_max_terms(50);
        let seq =
            radial_sequence(&SubsetSpec::AllPositive, RootOfUnity::one(), &[0.1, 0.99], Route::Direct, &opts).unwrap();
        assert!(seq[0].is_ok());
        assert!(matches!(seq[1], Err(Error::ResourceLimit(_))));
        assert!(radial_sequence(&SubsetSpec::AllPositive, RootOfUnity::one(), &[1.0], Route::Direct, &opts).is_err());
    }

    #[test]
    fn quotient_vanishes_toward_a_cube_root() {
        let zeta = RootOfUnity::new(1, 3).unwrap().value();
        let o = EvalOptions::default().with_eps(1e-14);
        let mags: Vec<f64> = [0.9, 0.99, 0.999]
            .iter()
            .map(|&r| pochhammer_ratio(zeta, ComplexPoint::real(r).unwrap(), &o).unwrap().value.norm())
            .collect();
        assert!(mags[0] > mags[1] && mags[1] > mags[2], "{mags:?}");
        assert!(mags[2] < 1e-3);
        let one = pochhammer_ratio(Complex64::new(1.0, 0.0), ComplexPoint::real(0.999).unwrap(), &o).unwrap();
        assert_eq!(one.value, Complex64::new(1.0, 0.0));
    }

    fn q_factorial(q: Complex64, n: usize) -> Complex64 {
        (1..=n as i32).map(|k| Complex64::new(1.0, 0.0) - q.powi(k)).product()
    }

    #[test]
    fn q_binomial_reciprocal() {
        let o = EvalOptions::default();
        for (z, q) in [
            (Complex64::new(0.7, 0.0), Complex64::new(0.7, 0.0)),
            (Complex64::from_polar(0.6, 1.0), Complex64::from_polar(0.7, -2.0)),
            (Complex64::new(-0.5, 0.2), Complex64::new(0.1, 0.4)),
        ] {
            let lhs = Complex64::new(1.0, 0.0) / pochhammer_inf(z, ComplexPoint::new(q).unwrap(), &o).unwrap().value;
            let rhs: Complex64 = (0..200).map(|n| z.powi(n as i32) / q_factorial(q, n)).sum();
            assert!((lhs - rhs).norm() < 1e-10, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn q_binomial_two_parameter() {
        // (az;q)_∞/(z;q)_∞ = Σ (a;q)_n z^n/(q;q)_n
        let (a, z, q) = (0.3, 0.5, 0.6);
        let o = EvalOptions::default();
        let qp = ComplexPoint::real(q).unwrap();
        let c = |x: f64| Complex64::new(x, 0.0);
        let lhs = pochhammer_inf(c(a * z), qp, &o).unwrap().value / pochhammer_inf(c(z), qp, &o).unwrap().value;
        let mut rhs = 0.0;
        let mut a_n = 1.0;
        let mut q_n = 1.0;
        for n in 0..200 {
            rhs += a_n * z.powi(n) / q_n;
            a_n *= 1.0 - a * q.powi(n);
            q_n *= 1.0 - q.powi(n + 1);
        }
        assert!((lhs.re - rhs).abs() < 1e-12 && lhs.im == 0.0);
    }
}
