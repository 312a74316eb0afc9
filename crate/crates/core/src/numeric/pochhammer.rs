use num_complex::Complex64;

use super::scalar::{MpComplex, Scalar};
use super::{terms_for, too_many_terms, ComplexPoint, EvalOptions, EvalResult, DOUBLE_BITS};
use crate::error::{Error, Result};

// roots of unity computed in floating point land a rounding error outside
// the closed disk
const UNIT_SLACK: f64 = 4.0 * f64::EPSILON;

/// `(a;q)_∞ = ∏_{m≥0}(1 − a q^m)` for `|a| ≤ 1`.
///
/// Stops after `T` factors once `|partial|·(e^σ − 1) ≤ eps`, with
/// `σ = |a||q|^T/(1 − |q|)`.
pub fn pochhammer_inf(a: Complex64, q: ComplexPoint, opts: &EvalOptions) -> Result<EvalResult> {
    opts.validate()?;
    if a.norm().is_nan() || a.norm() > 1.0 + UNIT_SLACK {
        return Err(Error::invalid(format!("|a| = {} must be <= 1", a.norm())));
    }
    if a == Complex64::new(0.0, 0.0) {
        return Ok(EvalResult::exact(Complex64::new(1.0, 0.0)));
    }
    if a == Complex64::new(1.0, 0.0) {
        return Ok(EvalResult { terms_used: 1, ..EvalResult::exact(Complex64::new(0.0, 0.0)) });
    }
    let r = q.modulus();
    let scale = a.norm() / (1.0 - r);
    let mut t = terms_for(r, scale, opts.eps / 2.0, opts.max_terms)?;
    loop {
        let (value, bits) = match opts.working_bits(1.0, t) {
            None => (product::<Complex64>((), a, q.value(), t), DOUBLE_BITS),
            Some(bits) => (product::<MpComplex>(bits, a, q.value(), t).to_c64(), bits as u32),
        };
        let sigma = scale * r.powi(t as i32);
        let bound = value.norm() * sigma.exp_m1();
        if bound <= opts.eps {
            return Ok(EvalResult { value, bound, terms_used: t, precision_bits: bits });
        }
        if t >= opts.max_terms {
            return Err(too_many_terms(r, opts.max_terms));
        }
        t = (t * 2).min(opts.max_terms);
    }
}

fn product<S: Scalar>(ctx: S::Ctx, a: Complex64, q: Complex64, t: usize) -> S {
    let qs = S::from_c64(ctx, q);
    let one = S::one(ctx);
    let mut aq = S::from_c64(ctx, a);
    let mut acc = one.clone();
    for _ in 0..t {
        acc = acc.mul(&one.sub(&aq));
        aq = aq.mul(&qs);
    }
    acc
}

/// `(q;q)_∞ / (ζq;q)_∞ = ∏_{n≥1}(1 − q^n)/(1 − ζq^n)` for `|ζ| ≤ 1`,
/// multiplied factor by factor so that neither product can overflow.
///
/// Each factor is `1 + δ_n` with `|δ_n| ≤ 2|q|^n/(1 − |q|)`.
pub fn pochhammer_ratio(zeta: Complex64, q: ComplexPoint, opts: &EvalOptions) -> Result<EvalResult> {
    opts.validate()?;
    if zeta.norm().is_nan() || zeta.norm() > 1.0 + UNIT_SLACK {
        return Err(Error::invalid(format!("|zeta| = {} must be <= 1", zeta.norm())));
    }
    let r = q.modulus();
    if r == 0.0 || zeta == Complex64::new(1.0, 0.0) {
        return Ok(EvalResult::exact(Complex64::new(1.0, 0.0)));
    }
    let scale = ratio_tail_scale(r);
    let mut t = terms_for(r, scale, opts.eps / 2.0, opts.max_terms)?;
    loop {
        let (value, bits) = match opts.working_bits(1.0, t) {
            None => (ratio_product::<Complex64>((), zeta, q.value(), t), DOUBLE_BITS),
            Some(bits) => (ratio_product::<MpComplex>(bits, zeta, q.value(), t).to_c64(), bits as u32),
        };
        let bound = value.norm() * (scale * r.powi(t as i32)).exp_m1();
        if bound <= opts.eps {
            return Ok(EvalResult { value, bound, terms_used: t, precision_bits: bits });
        }
        if t >= opts.max_terms {
            return Err(too_many_terms(r, opts.max_terms));
        }
        t = (t * 2).min(opts.max_terms);
    }
}

/// `Σ_{n>T} 2r^n/(1 − r) = ratio_tail_scale(r) · r^T`.
pub(super) fn ratio_tail_scale(r: f64) -> f64 {
    2.0 * r / ((1.0 - r) * (1.0 - r))
}

pub(super) fn ratio_product<S: Scalar>(ctx: S::Ctx, zeta: Complex64, q: Complex64, t: usize) -> S {
    let qs = S::from_c64(ctx, q);
    let zs = S::from_c64(ctx, zeta);
    let one = S::one(ctx);
    let mut qn = qs.clone();
    let mut acc = one.clone();
    for _ in 0..t {
        acc = acc.mul(&one.sub(&qn)).div(&one.sub(&zs.mul(&qn)));
        qn = qn.mul(&qs);
    }
    acc
}
