use num_complex::Complex64;

use super::pochhammer::ratio_tail_scale;
use super::scalar::{MpComplex, Scalar};
use super::{terms_for, too_many_terms, ComplexPoint, EvalOptions, EvalResult, DOUBLE_BITS};
use crate::error::{Error, Result};
use crate::subsets::{PeriodicReduction, SubsetSpec};

/// Cap on `M·T` (and on `M·|residues|` for the weights).
pub const SIEVE_WORK_CAP: u64 = 4_000_000_000;

/// `w_m = Σ_{r∈residues} ζ_M^{−mr}` for `m = 1..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SieveWeights {
    period: u64,
    weights: Vec<Complex64>,
}

impl SieveWeights {
    pub fn new(reduction: &PeriodicReduction) -> Result<Self> {
        check_work(reduction.period(), reduction.residues().len())?;
        Ok(SieveWeights { period: reduction.period(), weights: weights::<Complex64>((), reduction) })
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    /// `w_m`, for `1 ≤ m ≤ M`.
    pub fn weight(&self, m: u64) -> Complex64 {
        assert!((1..=self.period).contains(&m), "weight index out of range");
        self.weights[(m - 1) as usize]
    }

    /// `Σ_m w_m ζ_M^{mn}`, which is `M` on residue classes of `S` and `0`
    /// elsewhere.
    pub fn inverse_transform(&self, n: u64) -> Complex64 {
        let m_total = self.period;
        (1..=m_total)
            .map(|m| self.weight(m) * <Complex64 as Scalar>::root_of_unity((), (m * n) % m_total, m_total))
            .sum()
    }
}

fn check_work(period: u64, per_unit: usize) -> Result<()> {
    if period.saturating_mul(per_unit as u64) > SIEVE_WORK_CAP {
        return Err(Error::resource(format!(
            "sieve over period {period} needs more than {SIEVE_WORK_CAP} operations; use the direct route"
        )));
    }
    Ok(())
}

fn roots<S: Scalar>(ctx: S::Ctx, period: u64) -> Vec<S> {
    (0..period).map(|k| S::root_of_unity(ctx, k, period)).collect()
}

fn weights<S: Scalar>(ctx: S::Ctx, reduction: &PeriodicReduction) -> Vec<S> {
    let m_total = reduction.period();
    let table = roots::<S>(ctx, m_total);
    (1..=m_total)
        .map(|m| {
            reduction.residues().iter().fold(S::zero(ctx), |acc, &r| {
                // ζ^{−mr} = ζ^{M − (mr mod M)}
                let k = (m_total - (m as u128 * r as u128 % m_total as u128) as u64) % m_total;
                acc.add(&table[k as usize])
            })
        })
        .collect()
}

/// `F_S(q)` through the roots-of-unity filter
///
/// `F_S(q) = (1/M) Σ_{m=1}^{M} w_m (q;q)_∞/(ζ_M^m q;q)_∞ − [0 ∈ residues]·(q;q)_∞`.
///
/// The subtracted term removes the `n = 0` summand that the filter picks up
/// for the class of multiples of `M`.
pub fn f_sieve(spec: &SubsetSpec, q: ComplexPoint, opts: &EvalOptions) -> Result<EvalResult> {
    opts.validate()?;
    let reduction = spec.period_residues()?;
    let period = reduction.period();
    check_work(period, reduction.residues().len())?;
    let r = q.modulus();
    if r == 0.0 {
        return Ok(EvalResult::exact(Complex64::new(0.0, 0.0)));
    }
    let has_zero = reduction.residues().first() == Some(&0);
    let scale = ratio_tail_scale(r);
    let mut t = terms_for(r, scale, opts.eps / 4.0, opts.max_terms)?;
    let weights_f64 = weights::<Complex64>((), &reduction);
    loop {
        check_work(period, t)?;
        let magnitude = predicted_magnitude(&weights_f64, q.value(), t, reduction.residues().len());
        let (pass, bits) = match opts.working_bits(magnitude, t) {
            None => (sieve_pass::<Complex64>((), &weights_f64, q.value(), t), DOUBLE_BITS),
            Some(bits) => {
                let w = weights::<MpComplex>(bits, &reduction);
                (sieve_pass::<MpComplex>(bits, &w, q.value(), t), bits as u32)
            }
        };
        let m_f = period as f64;
        let sigma = scale * r.powi(t as i32);
        let mut value = pass.filtered / m_f;
        let mut bound = sigma.exp_m1() * pass.abs_sum / m_f;
        if has_zero {
            value -= pass.euler;
            bound += pass.euler.norm() * (r.powi(t as i32 + 1) / (1.0 - r)).exp_m1();
        }
        if bound <= opts.eps {
            return Ok(EvalResult { value, bound, terms_used: t, precision_bits: bits });
        }
        if t >= opts.max_terms {
            return Err(too_many_terms(r, opts.max_terms));
        }
        t = (t * 2).min(opts.max_terms);
    }
}

struct SievePass {
    /// `Σ_m w_m · ratio_m`
    filtered: Complex64,
    /// `Σ_m |w_m| · |ratio_m|`
    abs_sum: f64,
    /// `∏_{n≤T}(1 − q^n)`
    euler: Complex64,
}

fn sieve_pass<S: Scalar>(ctx: S::Ctx, weights: &[S], q: Complex64, t: usize) -> SievePass {
    let period = weights.len() as u64;
    let qs = S::from_c64(ctx, q);
    let one = S::one(ctx);
    let mut powers = Vec::with_capacity(t);
    let mut qn = qs.clone();
    for _ in 0..t {
        powers.push(qn.clone());
        qn = qn.mul(&qs);
    }
    let euler = powers.iter().fold(one.clone(), |acc, p| acc.mul(&one.sub(p)));

    // m = M contributes w_M exactly: the quotient is identically 1
    let w_last = &weights[weights.len() - 1];
    let mut filtered = w_last.clone();
    let mut abs_sum = w_last.norm();
    for m in 1..period {
        let w = &weights[(m - 1) as usize];
        if w.norm() == 0.0 {
            continue;
        }
        let zeta = S::root_of_unity(ctx, m, period);
        let ratio = powers.iter().fold(one.clone(), |acc, p| acc.mul(&one.sub(p)).div(&one.sub(&zeta.mul(p))));
        let term = w.mul(&ratio);
        abs_sum += w.norm() * ratio.norm();
        filtered = filtered.add(&term);
    }
    SievePass { filtered: filtered.to_c64(), abs_sum, euler: euler.to_c64() }
}

/// Largest partial quotient magnitude, weighted, relative to `|residues|`.
fn predicted_magnitude(weights: &[Complex64], q: Complex64, t: usize, members: usize) -> f64 {
    let period = weights.len() as u64;
    let log_q = q.ln();
    let one = Complex64::new(1.0, 0.0);
    let mut total = weights[weights.len() - 1].norm();
    for m in 1..period {
        let w = weights[(m - 1) as usize].norm();
        if w == 0.0 {
            continue;
        }
        let zeta = <Complex64 as Scalar>::root_of_unity((), m, period);
        let mut log_partial: f64 = 0.0;
        let mut best: f64 = 0.0;
        for n in 1..=t {
            let qn = (log_q * n as f64).exp();
            log_partial += (one - qn).norm().ln() - (one - zeta * qn).norm().ln();
            best = best.max(log_partial);
        }
        total += w * best.exp();
    }
    total / members.max(1) as f64
}
