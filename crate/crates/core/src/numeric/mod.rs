//! Complex evaluation of `F_S(q)` for `|q| < 1` with rigorous truncation
//! bounds.
//!
//! Two independent routes are provided:
//!
//! * [`f_direct`] sums `q^n ∏_{m>n}(1 − q^m)` over `n ∈ S` with a descending
//!   product recurrence. It only needs membership, so its cost does not
//!   depend on the period of `S`.
//! * [`f_sieve`] reduces `S` to residue classes modulo `M` and filters them
//!   with `M`-th roots of unity against the quotients
//!   `(q;q)_∞ / (ζ^m q;q)_∞`.
//!
//! Every reported `bound` follows from
//! `|∏_{m>T}(1 + δ_m) − 1| ≤ exp(Σ|δ_m|) − 1`; rounding is not included.
//! Evaluation runs in double precision unless the predicted size of the
//! summed terms exceeds the result scale by more than `10³`, in which case
//! the same recurrence is rerun with a wider mantissa.

mod direct;
mod pochhammer;
mod radial;
mod scalar;
mod sieve;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use direct::f_direct;
pub use pochhammer::{pochhammer_inf, pochhammer_ratio};
pub use radial::{geometric_radii, q_of_z, radial_sequence, RootOfUnity, DEFAULT_RADII};
pub use sieve::{f_sieve, SieveWeights};

/// Environment variable that overrides [`EvalOptions::precision_bits`].
pub const PRECISION_ENV: &str = "QDENSITY_PRECISION_BITS";

/// Double precision mantissa width.
pub const DOUBLE_BITS: u32 = 53;

/// Predicted ratio of summed magnitudes to the result beyond which the
/// engine leaves double precision.
pub const CANCELLATION_LIMIT: f64 = 1e3;

/// A point strictly inside the unit disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint(Complex64);

impl ComplexPoint {
    pub fn new(q: Complex64) -> Result<Self> {
        if !q.re.is_finite() || !q.im.is_finite() {
            return Err(Error::invalid(format!("q = {q} is not finite")));
        }
        if q.norm() >= 1.0 {
            return Err(Error::invalid(format!("|q| = {} must be < 1", q.norm())));
        }
        Ok(ComplexPoint(q))
    }

    pub fn real(q: f64) -> Result<Self> {
        Self::new(Complex64::new(q, 0.0))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn modulus(&self) -> f64 {
        self.0.norm()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Target absolute truncation error.
    pub eps: f64,
    /// Cap on product and sum lengths.
    pub max_terms: usize,
    /// Minimum working precision in bits. Values above 53 force the
    /// extended-precision path.
    pub precision_bits: u32,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { eps: 1e-12, max_terms: 10_000_000, precision_bits: DOUBLE_BITS }
    }
}

impl EvalOptions {
    pub fn with_eps(mut self, eps: f64) -> Self {
        self.eps = eps;
        self
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_precision_bits(mut self, bits: u32) -> Self {
        self.precision_bits = bits;
        self
    }

    /// Applies `QDENSITY_PRECISION_BITS` when it is set.
    pub fn with_env_overrides(self) -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(raw) => {
                let bits = raw
                    .trim()
                    .parse::<u32>()
                    .map_err(|_| Error::invalid(format!("{PRECISION_ENV}={raw:?} is not a bit count")))?;
                Ok(self.with_precision_bits(bits))
            }
            Err(_) => Ok(self),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.eps.is_finite() || self.eps <= 0.0 {
            return Err(Error::invalid(format!("eps must be positive, got {}", self.eps)));
        }
        if self.max_terms == 0 {
            return Err(Error::invalid("max_terms must be at least 1"));
        }
        if self.precision_bits < DOUBLE_BITS {
            return Err(Error::invalid(format!(
                "precision_bits must be at least {DOUBLE_BITS}, got {}",
                self.precision_bits
            )));
        }
        Ok(())
    }

    /// Working precision for a run whose terms are predicted to reach
    /// `magnitude` relative to the result, over `terms` steps. `None`
    /// means double precision.
    fn working_bits(&self, magnitude: f64, terms: usize) -> Option<usize> {
        let needs_extension = !magnitude.is_finite() || magnitude > CANCELLATION_LIMIT;
        if self.precision_bits <= DOUBLE_BITS && !needs_extension {
            return None;
        }
        let log_mag = if magnitude.is_finite() { magnitude.max(1.0).log2() } else { 4096.0 };
        let auto = 64 + log_mag.ceil() as usize + (terms.max(2) as f64).log2().ceil() as usize;
        Some(auto.max(self.precision_bits as usize))
    }
}

/// A value of `F_S(q)` (or a product) with its truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    /// `|value − exact| ≤ bound`, rounding aside.
    pub bound: f64,
    pub terms_used: usize,
    /// Mantissa width the value was computed with.
    pub precision_bits: u32,
}

impl EvalResult {
    fn exact(value: Complex64) -> Self {
        EvalResult { value, bound: 0.0, terms_used: 0, precision_bits: DOUBLE_BITS }
    }
}

/// `{"re": "...", "im": "..."}` with shortest round-trip decimals.
pub fn complex_json(z: Complex64) -> serde_json::Value {
    serde_json::json!({ "re": format!("{:?}", z.re), "im": format!("{:?}", z.im) })
}

impl Serialize for EvalResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("EvalResult", 3)?;
        st.serialize_field("value", &complex_json(self.value))?;
        st.serialize_field("bound", &self.bound)?;
        st.serialize_field("terms", &self.terms_used)?;
        st.end()
    }
}

/// Evaluation route for `F_S(q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Direct,
    Sieve,
}

impl Route {
    pub fn evaluate(self, spec: &crate::SubsetSpec, q: ComplexPoint, opts: &EvalOptions) -> Result<EvalResult> {
        match self {
            Route::Direct => f_direct(spec, q, opts),
            Route::Sieve => f_sieve(spec, q, opts),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Direct => "direct",
            Route::Sieve => "sieve",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Route::Direct),
            "sieve" => Ok(Route::Sieve),
            other => Err(Error::invalid(format!("unknown route {other:?}"))),
        }
    }
}

/// Parses `"0.5"`, `"0.99i"`, `"-i"`, `"1+.02i"` or `"-0.5-0.3e-1i"`.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::invalid(format!("{text:?} is not a complex number"));
    let real = |part: &str| -> Result<f64> {
        let v: f64 = part.parse().map_err(|_| bad())?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(bad())
        }
    };
    let Some(body) = s.strip_suffix(['i', 'I']) else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split =
        (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k])?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => real(other)?,
    };
    Ok(Complex64::new(re, im))
}

/// Smallest `T ≥ 1` with `scale · r^T ≤ target`, or a resource error past
/// `max_terms`.
fn terms_for(r: f64, scale: f64, target: f64, max_terms: usize) -> Result<usize> {
    if r == 0.0 || scale <= target {
        return Ok(1);
    }
    let t = ((target / scale).ln() / r.ln()).ceil();
    if !t.is_finite() || t > max_terms as f64 {
        return Err(too_many_terms(r, max_terms));
    }
    Ok((t as usize).max(1))
}

fn too_many_terms(r: f64, max_terms: usize) -> Error {
    Error::resource(format!("|q| = {r} is too close to 1 for the requested accuracy within {max_terms} terms"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_must_be_inside_the_disk() {
        assert!(ComplexPoint::real(0.999).is_ok());
        assert!(ComplexPoint::real(1.0).is_err());
        assert!(ComplexPoint::new(Complex64::new(0.8, 0.6)).is_err());
        assert!(ComplexPoint::new(Complex64::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn option_validation() {
        assert!(EvalOptions::default().validate().is_ok());
        assert!(EvalOptions::default().with_eps(0.0).validate().is_err());
        assert!(EvalOptions::default().with_max_terms(0).validate().is_err());
        assert!(EvalOptions::default().with_precision_bits(32).validate().is_err());
    }

    #[test]
    fn precision_selection() {
        let o = EvalOptions::default();
        assert_eq!(o.working_bits(10.0, 1000), None);
        let bits = o.working_bits(1e12, 1000).unwrap();
        assert!(bits >= 64 + 40 + 10);
        assert_eq!(o.with_precision_bits(300).working_bits(1.0, 10), Some(300));
        assert!(o.working_bits(f64::INFINITY, 10).unwrap() > 4096);
    }

    #[test]
    fn result_json_shape() {
        let r = EvalResult { value: Complex64::new(0.5, -0.25), bound: 1e-13, terms_used: 42, precision_bits: 53 };
        let v = serde_json::to_value(r).unwrap();
        assert_eq!(v, serde_json::json!({"value": {"re": "0.5", "im": "-0.25"}, "bound": 1e-13, "terms": 42}));
    }

    #[test]
    fn complex_literals() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0.5").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("0.99i").unwrap(), c(0.0, 0.99));
        assert_eq!(parse_complex("1+.02i").unwrap(), c(1.0, 0.02));
        assert_eq!(parse_complex("-0.5-0.3i").unwrap(), c(-0.5, -0.3));
        assert_eq!(parse_complex(" 1 - i ").unwrap(), c(1.0, -1.0));
        assert_eq!(parse_complex("1e-3+2E-2i").unwrap(), c(1e-3, 2e-2));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        for bad in ["", "abc", "1+", "1+2j", "nan", "1++2i"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn routes_parse() {
        assert_eq!("direct".parse::<Route>().unwrap(), Route::Direct);
        assert_eq!("sieve".parse::<Route>().unwrap(), Route::Sieve);
        assert!("fast".parse::<Route>().is_err());
    }
}
