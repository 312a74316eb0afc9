use num_complex::Complex64;

use super::scalar::{MpComplex, Scalar};
use super::{terms_for, too_many_terms, ComplexPoint, EvalOptions, EvalResult, DOUBLE_BITS};
use crate::error::Result;
use crate::subsets::{Membership, SubsetSpec};

// q^n is re-anchored by exponentiation this often to stop drift from
// repeated division by q
const ANCHOR: usize = 64;

/// `F_S(q)` by the descending tail-product recurrence.
///
/// With `P_n = ∏_{m=n+1}^{T+1}(1 − q^m)`, the sum `Σ_{n≤T, n∈S} q^n P_n`
/// differs from `F_S(q)` by at most
/// `(e^σ − 1)·Σ|q^n P_n| + e^σ |q|^{T+1}/(1 − |q|)`, `σ = |q|^{T+2}/(1 − |q|)`.
/// `T` starts where `2|q|^{T+1}/(1 − |q|) < eps/2` and doubles until that
/// bound is below `eps`.
pub fn f_direct(spec: &SubsetSpec, q: ComplexPoint, opts: &EvalOptions) -> Result<EvalResult> {
    opts.validate()?;
    let r = q.modulus();
    if r == 0.0 {
        return Ok(EvalResult::exact(Complex64::new(0.0, 0.0)));
    }
    let member = spec.membership();
    let q = q.value();
    let mut t = terms_for(r, 2.0 * r / (1.0 - r), opts.eps / 2.0, opts.max_terms)?;
    loop {
        let magnitude = log_max_term(&member, q, t).exp();
        let (value, abs_sum, bits) = match opts.working_bits(magnitude, t) {
            None => {
                let (v, a) = direct_pass::<Complex64>((), &member, q, t);
                (v, a, DOUBLE_BITS)
            }
            Some(bits) => {
                let (v, a) = direct_pass::<MpComplex>(bits, &member, q, t);
                (v.to_c64(), a, bits as u32)
            }
        };
        let sigma = r.powi(t as i32 + 2) / (1.0 - r);
        let bound = sigma.exp_m1() * abs_sum + sigma.exp() * r.powi(t as i32 + 1) / (1.0 - r);
        if bound <= opts.eps {
            return Ok(EvalResult { value, bound, terms_used: t, precision_bits: bits });
        }
        if t >= opts.max_terms {
            return Err(too_many_terms(r, opts.max_terms));
        }
        t = (t * 2).min(opts.max_terms);
    }
}

fn direct_pass<S: Scalar>(ctx: S::Ctx, member: &Membership, q: Complex64, t: usize) -> (S, f64) {
    let qs = S::from_c64(ctx, q);
    let one = S::one(ctx);
    let q_inv = one.div(&qs);
    let mut tail = one.clone();
    let mut sum = S::zero(ctx);
    let mut abs_sum = 0.0;
    let mut pow = qs.powu(ctx, t as u64 + 1);
    for n in (1..=t).rev() {
        // pow = q^{n+1} here
        tail = tail.mul(&one.sub(&pow));
        pow = if n % ANCHOR == 0 { qs.powu(ctx, n as u64) } else { pow.mul(&q_inv) };
        if member.contains(n as u64) {
            let term = pow.mul(&tail);
            abs_sum += term.norm();
            sum = sum.add(&term);
        }
    }
    (sum, abs_sum)
}

/// `max_{n∈S, n≤T} log|q^n P_n|`, from logarithms only so that it cannot
/// overflow.
fn log_max_term(member: &Membership, q: Complex64, t: usize) -> f64 {
    let log_q = q.ln();
    let log_r = log_q.re;
    let mut log_tail = 0.0;
    let mut best = f64::NEG_INFINITY;
    for n in (1..=t).rev() {
        let qm = (log_q * (n as f64 + 1.0)).exp();
        log_tail += (Complex64::new(1.0, 0.0) - qm).norm().ln();
        if member.contains(n as u64) {
            best = best.max(n as f64 * log_r + log_tail);
        }
    }
    best
}
