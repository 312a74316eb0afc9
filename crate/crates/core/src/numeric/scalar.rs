//! Complex arithmetic shared by the evaluation routes, at double precision
//! or at a configurable binary precision backed by `astro-float`.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_complex::Complex64;

const RM: RoundingMode = RoundingMode::ToEven;

pub(crate) trait Scalar: Clone {
    /// Double precision needs nothing; extended precision carries its bit width.
    type Ctx: Copy;

    fn from_c64(ctx: Self::Ctx, z: Complex64) -> Self;
    /// `e^{2πi k/m}`.
    fn root_of_unity(ctx: Self::Ctx, k: u64, m: u64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn norm(&self) -> f64;
    fn to_c64(&self) -> Complex64;

    fn one(ctx: Self::Ctx) -> Self {
        Self::from_c64(ctx, Complex64::new(1.0, 0.0))
    }

    fn zero(ctx: Self::Ctx) -> Self {
        Self::from_c64(ctx, Complex64::new(0.0, 0.0))
    }

    fn powu(&self, ctx: Self::Ctx, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(ctx);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Scalar for Complex64 {
    type Ctx = ();

    fn from_c64(_: (), z: Complex64) -> Self {
        z
    }

    fn root_of_unity(_: (), k: u64, m: u64) -> Self {
        let k = k % m;
        // exact at the quarter turns so that w_M and ±1, ±i stay exact
        match (4 * k).checked_rem(m) {
            Some(0) => match 4 * k / m {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            },
            _ => Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / m as f64),
        }
    }

    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn norm(&self) -> f64 {
        Complex64::norm(*self)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

/// A complex number with `bits` of binary mantissa in each component.
#[derive(Debug, Clone)]
pub(crate) struct MpComplex {
    re: BigFloat,
    im: BigFloat,
    bits: usize,
}

fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else { return f64::NAN };
    let Some(&top) = words.last() else { return 0.0 };
    if top == 0 {
        return 0.0;
    }
    // value = (top / 2^64) · 2^exp, up to the lower words
    let frac = top as f64 / 2f64.powi(64);
    let magnitude = if exp > 1100 {
        f64::INFINITY
    } else if exp < -1100 {
        0.0
    } else {
        // split the scaling so subnormal results do not flush early
        frac * 2f64.powi(exp / 2) * 2f64.powi(exp - exp / 2)
    };
    if sign == Sign::Neg {
        -magnitude
    } else {
        magnitude
    }
}

impl Scalar for MpComplex {
    type Ctx = usize;

    fn from_c64(bits: usize, z: Complex64) -> Self {
        MpComplex { re: BigFloat::from_f64(z.re, bits), im: BigFloat::from_f64(z.im, bits), bits }
    }

    fn root_of_unity(bits: usize, k: u64, m: u64) -> Self {
        let k = k % m;
        if (4 * k).is_multiple_of(m) {
            return Self::from_c64(bits, <Complex64 as Scalar>::root_of_unity((), k, m));
        }
        let work = bits + 64;
        let mut cc = Consts::new().expect("astro-float constants cache");
        let angle =
            cc.pi(work, RM).mul(&BigFloat::from_u64(2 * k, work), work, RM).div(&BigFloat::from_u64(m, work), work, RM);
        let re = angle.cos(bits, RM, &mut cc);
        let im = angle.sin(bits, RM, &mut cc);
        MpComplex { re, im, bits }
    }

    fn add(&self, o: &Self) -> Self {
        let p = self.bits;
        MpComplex { re: self.re.add(&o.re, p, RM), im: self.im.add(&o.im, p, RM), bits: p }
    }

    fn sub(&self, o: &Self) -> Self {
        let p = self.bits;
        MpComplex { re: self.re.sub(&o.re, p, RM), im: self.im.sub(&o.im, p, RM), bits: p }
    }

    fn mul(&self, o: &Self) -> Self {
        let p = self.bits;
        let w = p + 32;
        let re = self.re.mul(&o.re, w, RM).sub(&self.im.mul(&o.im, w, RM), p, RM);
        let im = self.re.mul(&o.im, w, RM).add(&self.im.mul(&o.re, w, RM), p, RM);
        MpComplex { re, im, bits: p }
    }

    fn div(&self, o: &Self) -> Self {
        let p = self.bits;
        let w = p + 32;
        let denom = o.re.mul(&o.re, w, RM).add(&o.im.mul(&o.im, w, RM), w, RM);
        let re = self.re.mul(&o.re, w, RM).add(&self.im.mul(&o.im, w, RM), w, RM);
        let im = self.im.mul(&o.re, w, RM).sub(&self.re.mul(&o.im, w, RM), w, RM);
        MpComplex { re: re.div(&denom, p, RM), im: im.div(&denom, p, RM), bits: p }
    }

    fn norm(&self) -> f64 {
        self.to_c64().norm()
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(big_to_f64(&self.re), big_to_f64(&self.im))
    }
}
