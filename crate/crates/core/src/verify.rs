//! Self-checks that tie the exact series, the partition oracle, the Pell
//! classification and the numeric routes together.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{f_direct, f_sieve, pochhammer_inf, pochhammer_ratio, ComplexPoint, EvalOptions, SieveWeights};
use crate::partitions::Oracle;
use crate::pell::{classify, pentagonal, pentagonal_index, square_pentagonal_numbers};
use crate::series::{
    euler_series, largest_part_series, smallest_part_series, theta_series, theta_square_series, TruncatedSeries,
};
use crate::subsets::{parse, SubsetSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Duality,
    Oracle,
    Corollary12,
    SieveVsDirect,
    QBinomial,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Identities, Suite::Duality, Suite::Oracle, Suite::Corollary12, Suite::SieveVsDirect, Suite::QBinomial];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Duality => "duality",
            Suite::Oracle => "oracle",
            Suite::Corollary12 => "corollary12",
            Suite::SieveVsDirect => "sieve-vs-direct",
            Suite::QBinomial => "qbinomial",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let known: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::invalid(format!("unknown suite {s:?}; expected one of {}", known.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Series order for coefficientwise checks.
    pub order: usize,
    /// Largest `n` enumerated by the partition oracle.
    pub bound: u32,
    /// Subsets to check; `None` uses [`default_subsets`].
    pub subsets: Option<Vec<SubsetSpec>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order: 200, bound: 40, subsets: None }
    }
}

pub fn default_subsets() -> Vec<SubsetSpec> {
    ["1 mod 2", "2 mod 2", "1 mod 3", "kfree 2 3"].iter().map(|s| parse(s).expect("valid subset")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        Report { suite: suite.name().to_string(), passed: checks.iter().all(|c| c.passed), checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

/// First index where two series differ, if any.
fn first_difference(a: &TruncatedSeries, b: &TruncatedSeries) -> Option<usize> {
    let n = a.order().max(b.order());
    let zero = BigInt::from(0);
    let at = |s: &TruncatedSeries, i: usize| if i <= s.order() { s.coeff(i).clone() } else { zero.clone() };
    (0..=n).find(|&i| at(a, i) != at(b, i))
}

fn series_check(name: String, a: &TruncatedSeries, b: &TruncatedSeries) -> Check {
    match first_difference(a, b) {
        None => check(name, true, format!("equal through q^{}", a.order())),
        Some(i) => check(name, false, format!("coefficients of q^{i} differ: {} vs {}", a.coeff(i), b.coeff(i))),
    }
}

pub fn run(suite: Suite, opts: &VerifyOptions) -> Result<Report> {
    let subsets = opts.subsets.clone().unwrap_or_else(default_subsets);
    let checks = match suite {
        Suite::Identities => identities(opts.order),
        Suite::Duality => subsets
            .iter()
            .map(|s| {
                series_check(
                    format!("smallest = largest for {s}"),
                    &smallest_part_series(s, opts.order),
                    &largest_part_series(s, opts.order),
                )
            })
            .collect(),
        Suite::Oracle => oracle(&subsets, opts.bound)?,
        Suite::Corollary12 => corollary(opts.bound, opts.order)?,
        Suite::SieveVsDirect => sieve_vs_direct(&subsets)?,
        Suite::QBinomial => qbinomial()?,
    };
    Ok(Report::new(suite, checks))
}

fn identities(order: usize) -> Vec<Check> {
    let euler = euler_series(order);
    let one = TruncatedSeries::one(order);
    let theta_sq = theta_square_series(order);
    let odd = smallest_part_series(&SubsetSpec::progression(1, 2).expect("valid"), order);
    let even = smallest_part_series(&SubsetSpec::progression(2, 2).expect("valid"), order);
    let all = smallest_part_series(&SubsetSpec::AllPositive, order);

    let pentagonal_ok = (0..=order).all(|n| {
        let c = euler.coeff(n).to_i64().unwrap_or(i64::MAX);
        match pentagonal_index(n as u64) {
            Some(m) => pentagonal(m) == n as i64 && c == if m % 2 == 0 { 1 } else { -1 },
            None => c == 0,
        }
    });
    vec![
        series_check("F for odd smallest parts is Σ(−1)^(n+1) q^(n²)".into(), &odd, &theta_sq),
        series_check(
            "F for even smallest parts is 1 + Σ(−1)^n q^(n²) − (q;q)∞".into(),
            &even,
            &(&(&one - &theta_sq) - &euler),
        ),
        series_check("F for all positive integers is 1 − (q;q)∞".into(), &all, &(&one - &euler)),
        series_check(
            "(q;q)∞² = θ(q)·(q²;q²)∞".into(),
            &euler.mul(&euler),
            &theta_series(order).mul(&euler.substitute_q_pow(2)),
        ),
        check(
            "(q;q)∞ coefficients are ±1 exactly at generalized pentagonal numbers",
            pentagonal_ok,
            format!("checked through q^{order}"),
        ),
    ]
}

fn oracle(subsets: &[SubsetSpec], bound: u32) -> Result<Vec<Check>> {
    let oracle = Oracle::with_bound(bound);
    let mut checks = Vec::new();
    for spec in subsets {
        let series = smallest_part_series(spec, bound as usize);
        let mut mismatch = None;
        for n in 0..=bound {
            let brute = oracle.f_s_coefficient(spec, n)?;
            if BigInt::from(brute) != *series.coeff(n as usize) {
                mismatch = Some((n, brute));
                break;
            }
        }
        checks.push(match mismatch {
            None => check(format!("oracle = series for {spec}"), true, format!("n ≤ {bound}")),
            Some((n, brute)) => check(
                format!("oracle = series for {spec}"),
                false,
                format!("n = {n}: oracle {brute}, series {}", series.coeff(n as usize)),
            ),
        });
    }
    Ok(checks)
}

fn corollary(bound: u32, order: usize) -> Result<Vec<Check>> {
    let oracle = Oracle::with_bound(bound);
    let mut enum_failure = None;
    for n in 1..=bound {
        let counts = oracle.distinct_counts(n)?;
        let c = classify(u64::from(n));
        if counts.odd_difference() != i64::from(c.odd_prediction)
            || counts.even_difference() != i64::from(c.even_prediction)
        {
            enum_failure = Some(format!(
                "n = {n}: counted ({}, {}), predicted ({}, {})",
                counts.odd_difference(),
                counts.even_difference(),
                c.odd_prediction,
                c.even_prediction
            ));
            break;
        }
    }

    let odd = smallest_part_series(&SubsetSpec::progression(1, 2).expect("valid"), order);
    let even = smallest_part_series(&SubsetSpec::progression(2, 2).expect("valid"), order);
    let mut series_failure = None;
    let mut coincidences = Vec::new();
    for n in 1..=order {
        let c = classify(n as u64);
        if c.is_square() && c.is_pentagonal() {
            coincidences.push(n as u64);
        }
        let odd_diff = -odd.coeff(n).to_i64().unwrap_or(i64::MAX);
        let even_diff = -even.coeff(n).to_i64().unwrap_or(i64::MAX);
        if odd_diff != i64::from(c.odd_prediction) || even_diff != i64::from(c.even_prediction) {
            series_failure = Some(format!(
                "n = {n}: series ({odd_diff}, {even_diff}), predicted ({}, {})",
                c.odd_prediction, c.even_prediction
            ));
            break;
        }
    }
    let from_pell = square_pentagonal_numbers(order as u64);
    Ok(vec![
        check(
            "distinct-part counts match the predictions",
            enum_failure.is_none(),
            enum_failure.unwrap_or_else(|| format!("n ≤ {bound}")),
        ),
        check(
            "series coefficients match the predictions",
            series_failure.is_none(),
            series_failure.unwrap_or_else(|| format!("n ≤ {order}")),
        ),
        check(
            "square pentagonal numbers come from x² − 6y² = 1",
            coincidences == from_pell,
            format!("classified {coincidences:?}, Pell {from_pell:?}"),
        ),
    ])
}

fn sample_points() -> Vec<Complex64> {
    let mut points = Vec::new();
    for (i, r) in [0.2, 0.5, 0.75, 0.9].into_iter().enumerate() {
        for k in 0..5 {
            let angle = std::f64::consts::TAU * (k as f64 + 0.13 * (i + 1) as f64) / 5.0;
            points.push(Complex64::from_polar(r, angle));
        }
    }
    points.push(Complex64::new(0.9, 0.0));
    points
}

// slack for floating point rounding, which the bounds do not cover
const ROUNDING: f64 = 1e-12;

fn sieve_vs_direct(subsets: &[SubsetSpec]) -> Result<Vec<Check>> {
    let opts = EvalOptions::default();
    let mut checks = Vec::new();
    for spec in subsets {
        let mut worst: f64 = 0.0;
        let mut failure = None;
        for q in sample_points() {
            let point = ComplexPoint::new(q)?;
            let d = f_direct(spec, point, &opts)?;
            let s = f_sieve(spec, point, &opts)?;
            let gap = (d.value - s.value).norm();
            worst = worst.max(gap);
            if gap > d.bound + s.bound + ROUNDING {
                failure = Some(format!("q = {q}: direct {} vs sieve {}", d.value, s.value));
                break;
            }
        }
        checks.push(check(
            format!("direct = sieve for {spec}"),
            failure.is_none(),
            failure.unwrap_or_else(|| format!("largest gap {worst:.3e}")),
        ));

        let series = smallest_part_series(spec, 60);
        let mut failure = None;
        for q in sample_points().into_iter().filter(|q| q.norm() <= 0.5) {
            let d = f_direct(spec, ComplexPoint::new(q)?, &opts)?;
            let tail = 2.0 * q.norm().powi(61) / (1.0 - q.norm());
            if (d.value - series.eval(q)).norm() > tail + d.bound + ROUNDING {
                failure = Some(format!("q = {q}: direct {} vs series {}", d.value, series.eval(q)));
                break;
            }
        }
        checks.push(check(
            format!("direct = series to q^60 for {spec}"),
            failure.is_none(),
            failure.unwrap_or_else(|| "|q| ≤ 0.5".into()),
        ));
    }
    Ok(checks)
}

fn q_factorial(q: Complex64, n: usize) -> Complex64 {
    (1..=n as i32).map(|k| Complex64::new(1.0, 0.0) - q.powi(k)).product()
}

fn qbinomial() -> Result<Vec<Check>> {
    let opts = EvalOptions::default();
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut worst: f64 = 0.0;
    for z in [c(0.7), c(-0.7), Complex64::from_polar(0.5, 1.0), Complex64::from_polar(0.7, 2.5)] {
        for q in [c(0.7), c(0.3), Complex64::from_polar(0.6, -1.2), Complex64::from_polar(0.7, 3.0)] {
            let lhs = c(1.0) / pochhammer_inf(z, ComplexPoint::new(q)?, &opts)?.value;
            let rhs: Complex64 = (0..300).map(|n| z.powi(n as i32) / q_factorial(q, n)).sum();
            worst = worst.max((lhs - rhs).norm());
        }
    }

    let (a, z, q) = (c(0.3), c(0.5), ComplexPoint::real(0.6)?);
    let lhs = pochhammer_inf(a * z, q, &opts)?.value / pochhammer_inf(z, q, &opts)?.value;
    let mut rhs = c(0.0);
    let mut a_n = c(1.0);
    for n in 0..300 {
        rhs += a_n * z.powi(n) / q_factorial(q.value(), n as usize);
        a_n *= c(1.0) - a * q.value().powi(n);
    }
    let two_param = (lhs - rhs).norm();

    let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let mags = [0.9, 0.99, 0.999]
        .iter()
        .map(|&r| Ok(pochhammer_ratio(zeta, ComplexPoint::real(r)?, &opts)?.value.norm()))
        .collect::<Result<Vec<f64>>>()?;
    let unit = pochhammer_ratio(c(1.0), ComplexPoint::real(0.999)?, &opts)?.value;

    let mut weights_ok = true;
    for spec in ["1 mod 3", "0 mod 4 | 3 mod 4", "kfree 2 3"] {
        let red = parse(spec)?.period_residues()?;
        let w = SieveWeights::new(&red)?;
        weights_ok &= w.weight(w.period()) == c(red.residues().len() as f64);
        for n in 0..red.period() {
            let expected = if red.contains(n) { red.period() as f64 } else { 0.0 };
            weights_ok &= (w.inverse_transform(n) - c(expected)).norm() < 1e-8;
        }
    }

    Ok(vec![
        check("1/(z;q)∞ = Σ z^n/(q;q)_n", worst < 1e-10, format!("largest gap {worst:.3e}")),
        check(
            "(az;q)∞/(z;q)∞ = Σ (a;q)_n z^n/(q;q)_n at (0.3, 0.5, 0.6)",
            two_param < 1e-10,
            format!("gap {two_param:.3e}"),
        ),
        check(
            "|(q;q)∞/(ζ₃q;q)∞| decreases toward 0",
            mags[0] > mags[1] && mags[1] > mags[2] && unit == c(1.0),
            format!("{mags:?}; at ζ = 1 the quotient is {unit}"),
        ),
        check("sieve weights are orthogonal", weights_ok, "w_M = |residues| and the transform inverts"),
    ])
}
