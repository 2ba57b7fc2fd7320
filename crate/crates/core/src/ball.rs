//! Midpoint-radius ball arithmetic.
//!
//! A [`Ball`] stores an MPFR midpoint together with an `f64` radius that is
//! rounded upward by every operation, and stands for the closed interval
//! `[mid - rad, mid + rad]`. Each operation returns a ball containing the
//! exact image of its inputs. [`ComplexBall`] is the rectangle `re × im`.
//!
//! Monotone elementary functions are evaluated at the two endpoints with
//! directed rounding; the others use Lipschitz bounds around the midpoint.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use rug::float::{Constant, Round};
use rug::Float;

use crate::cheb::ScaledInterval;
use crate::error::{Error, Result};

/// Smallest working precision accepted by the certified pipelines.
pub const MIN_PREC: u32 = 64;

/// A non-negative magnitude. Sums and products are rounded upward.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Mag(f64);

impl Mag {
    pub const ZERO: Mag = Mag(0.0);
    pub const INFINITY: Mag = Mag(f64::INFINITY);

    pub fn new(x: f64) -> Mag {
        if x.is_nan() {
            Mag::INFINITY
        } else {
            Mag(x.abs())
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// `2^e`, saturating to the smallest subnormal below the `f64` range.
    pub fn pow2(e: i64) -> Mag {
        let bits = if e > 1023 {
            return Mag::INFINITY;
        } else if e >= -1022 {
            ((e + 1023) as u64) << 52
        } else if e >= -1074 {
            1u64 << (e + 1074)
        } else {
            1
        };
        Mag(f64::from_bits(bits))
    }

    /// Upper bound for `|x|`.
    pub fn of(x: &Float) -> Mag {
        if x.is_nan() {
            return Mag::INFINITY;
        }
        Mag(x.as_abs().to_f64_round(Round::Up))
    }

    pub fn add(self, other: Mag) -> Mag {
        if self.0 == 0.0 {
            other
        } else if other.0 == 0.0 {
            self
        } else {
            Mag((self.0 + other.0).next_up())
        }
    }

    pub fn mul(self, other: Mag) -> Mag {
        if self.0 == 0.0 || other.0 == 0.0 {
            Mag::ZERO
        } else {
            Mag((self.0 * other.0).next_up())
        }
    }

    /// `self / d` where `d > 0` is a lower bound for the true divisor.
    fn div_by(self, d: f64) -> Mag {
        if self.0 == 0.0 {
            Mag::ZERO
        } else {
            Mag((self.0 / d).next_up())
        }
    }

    fn mul_2si(self, e: i32) -> Mag {
        if self.0 == 0.0 {
            return self;
        }
        let scaled = self.0 * Mag::pow2(i64::from(e)).0;
        if e < 0 {
            Mag(scaled.next_up())
        } else {
            Mag(scaled)
        }
    }

    pub fn max(self, other: Mag) -> Mag {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    pub fn to_float(self) -> Float {
        Float::with_val(53, self.0)
    }
}

/// Bound on the error of a correctly rounded result: one ulp unless exact.
fn rounding_error(value: &Float, ord: Ordering) -> Mag {
    if ord == Ordering::Equal {
        return Mag::ZERO;
    }
    match value.get_exp() {
        Some(e) => Mag::pow2(i64::from(e) - i64::from(value.prec())),
        None if value.is_zero() => Mag::pow2(i64::MIN),
        None => Mag::INFINITY,
    }
}

fn max_float(a: Float, b: Float) -> Float {
    if b > a {
        b
    } else {
        a
    }
}

/// Real ball `[mid - rad, mid + rad]`.
#[derive(Clone, Debug)]
pub struct Ball {
    mid: Float,
    rad: Mag,
}

impl Ball {
    pub fn new(mid: Float, rad: Mag) -> Ball {
        Ball { mid, rad }
    }

    pub fn exact(mid: Float) -> Ball {
        Ball { mid, rad: Mag::ZERO }
    }

    pub fn zero(prec: u32) -> Ball {
        Ball::exact(Float::new(prec))
    }

    pub fn one(prec: u32) -> Ball {
        Ball::exact(Float::with_val(prec, 1))
    }

    pub fn from_f64(x: f64, prec: u32) -> Ball {
        let (mid, ord) = Float::with_val_round(prec, x, Round::Nearest);
        let rad = rounding_error(&mid, ord);
        Ball { mid, rad }
    }

    pub fn from_i64(n: i64, prec: u32) -> Ball {
        let (mid, ord) = Float::with_val_round(prec, n, Round::Nearest);
        let rad = rounding_error(&mid, ord);
        Ball { mid, rad }
    }

    /// Enclosure of `num / den`.
    ///
    /// Panics if `den` is zero.
    pub fn ratio(num: i64, den: i64, prec: u32) -> Ball {
        assert!(den != 0, "zero denominator");
        Ball::from_i64(num, prec)
            .div(&Ball::from_i64(den, prec))
            .expect("nonzero integer denominator")
    }

    /// Enclosure of a decimal literal such as `"1.001"` or `"1e-50"`.
    pub fn parse_decimal(s: &str, prec: u32) -> Result<Ball> {
        let parse = || Float::parse(s).map_err(|e| Error::Parameter(format!("cannot parse {s:?}: {e}")));
        let lo = Float::with_val_round(prec, parse()?, Round::Down).0;
        let hi = Float::with_val_round(prec, parse()?, Round::Up).0;
        Ok(Ball::from_endpoints(&lo, &hi, prec))
    }

    /// Smallest representable ball containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Float, hi: &Float, prec: u32) -> Ball {
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        if !lo.is_finite() || !hi.is_finite() {
            return Ball {
                mid: Float::new(prec),
                rad: Mag::INFINITY,
            };
        }
        let mut mid = Float::with_val(prec, lo + hi);
        mid >>= 1;
        let above = Float::with_val_round(64, hi - &mid, Round::Up).0;
        let below = Float::with_val_round(64, &mid - lo, Round::Up).0;
        Ball {
            mid,
            rad: Mag::of(&above).max(Mag::of(&below)),
        }
    }

    pub fn pi(prec: u32) -> Ball {
        let lo = Float::with_val_round(prec, Constant::Pi, Round::Down).0;
        let hi = Float::with_val_round(prec, Constant::Pi, Round::Up).0;
        Ball::from_endpoints(&lo, &hi, prec)
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    /// Lower endpoint, rounded toward −∞.
    pub fn lower(&self) -> Float {
        let r = self.rad.to_float();
        Float::with_val_round(self.prec(), &self.mid - &r, Round::Down).0
    }

    /// Upper endpoint, rounded toward +∞.
    pub fn upper(&self) -> Float {
        let r = self.rad.to_float();
        Float::with_val_round(self.prec(), &self.mid + &r, Round::Up).0
    }

    /// Upper bound on `|x - mid|`.
    fn distance_upper(&self, x: &Float) -> Float {
        let p = self.prec().max(x.prec()) + 64;
        let up = Float::with_val_round(p, x - &self.mid, Round::Up).0;
        let down = Float::with_val_round(p, x - &self.mid, Round::Down).0;
        max_float(up.abs(), down.abs())
    }

    /// Whether `x` certainly lies in the ball.
    pub fn contains_point(&self, x: &Float) -> bool {
        self.is_finite() && self.distance_upper(x) <= self.rad.to_float()
    }

    /// Whether `other` is certainly a subset of `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        if !self.is_finite() || !other.is_finite() {
            return false;
        }
        let d = self.distance_upper(&other.mid);
        let total = Float::with_val_round(d.prec(), &d + &other.rad.to_float(), Round::Up).0;
        total <= self.rad.to_float()
    }

    /// Whether `self` and `other` may intersect.
    pub fn overlaps(&self, other: &Ball) -> bool {
        if !self.is_finite() || !other.is_finite() {
            return true;
        }
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    pub fn is_positive(&self) -> bool {
        self.is_finite() && self.lower() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.is_finite() && self.upper() < 0
    }

    pub fn excludes_zero(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.excludes_zero()
    }

    pub fn neg(&self) -> Ball {
        Ball {
            mid: Float::with_val(self.prec(), -&self.mid),
            rad: self.rad,
        }
    }

    pub fn add(&self, rhs: &Ball) -> Ball {
        let prec = self.prec().max(rhs.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid + &rhs.mid, Round::Nearest);
        let rad = self.rad.add(rhs.rad).add(rounding_error(&mid, ord));
        Ball { mid, rad }
    }

    pub fn sub(&self, rhs: &Ball) -> Ball {
        let prec = self.prec().max(rhs.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid - &rhs.mid, Round::Nearest);
        let rad = self.rad.add(rhs.rad).add(rounding_error(&mid, ord));
        Ball { mid, rad }
    }

    pub fn mul(&self, rhs: &Ball) -> Ball {
        let prec = self.prec().max(rhs.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid * &rhs.mid, Round::Nearest);
        let rad = Mag::of(&self.mid)
            .mul(rhs.rad)
            .add(Mag::of(&rhs.mid).mul(self.rad))
            .add(self.rad.mul(rhs.rad))
            .add(rounding_error(&mid, ord));
        Ball { mid, rad }
    }

    pub fn div(&self, rhs: &Ball) -> Result<Ball> {
        if !rhs.excludes_zero() || !self.is_finite() {
            return Err(Error::InvalidBall("division by a ball containing zero".into()));
        }
        let prec = self.prec().max(rhs.prec());
        let (mid, ord) = Float::with_val_round(prec, &self.mid / &rhs.mid, Round::Nearest);
        let qerr = rounding_error(&mid, ord);
        let denom = Float::with_val_round(64, &*rhs.mid.as_abs() - &rhs.rad.to_float(), Round::Down)
            .0
            .to_f64_round(Round::Down);
        if !(denom > 0.0) {
            return Err(Error::InvalidBall("divisor too close to zero".into()));
        }
        let quotient = Mag::of(&mid).add(qerr);
        let rad = self.rad.add(quotient.mul(rhs.rad)).div_by(denom).add(qerr);
        Ok(Ball { mid, rad })
    }

    pub fn recip(&self) -> Result<Ball> {
        Ball::one(self.prec()).div(self)
    }

    /// Exact multiplication by `2^e`.
    pub fn mul_2si(&self, e: i32) -> Ball {
        let mut mid = self.mid.clone();
        mid <<= e;
        Ball {
            mid,
            rad: self.rad.mul_2si(e),
        }
    }

    pub fn sqr(&self) -> Ball {
        if self.contains_zero() {
            let m = max_float(self.lower().abs(), self.upper().abs());
            let hi = Float::with_val_round(self.prec(), m.square_ref(), Round::Up).0;
            Ball::from_endpoints(&Float::new(self.prec()), &hi, self.prec())
        } else {
            let (a, b) = (self.lower().abs(), self.upper().abs());
            let (small, big) = if a <= b { (a, b) } else { (b, a) };
            let lo = Float::with_val_round(self.prec(), small.square_ref(), Round::Down).0;
            let hi = Float::with_val_round(self.prec(), big.square_ref(), Round::Up).0;
            Ball::from_endpoints(&lo, &hi, self.prec())
        }
    }

    pub fn abs(&self) -> Ball {
        if self.lower() >= 0 {
            self.clone()
        } else if self.upper() <= 0 {
            self.neg()
        } else {
            let m = max_float(self.lower().abs(), self.upper().abs());
            Ball::from_endpoints(&Float::new(self.prec()), &m, self.prec())
        }
    }

    /// `[max(lower, lo), min(upper, hi)]`; errors if the result is empty.
    pub fn clamp(&self, lo: &Float, hi: &Float) -> Result<Ball> {
        let a = max_float(self.lower(), lo.clone());
        let b = {
            let u = self.upper();
            if &u > hi {
                hi.clone()
            } else {
                u
            }
        };
        if a > b {
            return Err(Error::InvalidBall("enclosure does not meet the clamp interval".into()));
        }
        if a == self.lower() && b == self.upper() {
            return Ok(self.clone());
        }
        Ok(Ball::from_endpoints(&a, &b, self.prec()))
    }

    fn map_monotone(&self, increasing: bool, f: impl Fn(&Float, Round) -> Float) -> Ball {
        let (lo, hi) = (self.lower(), self.upper());
        let (a, b) = if increasing {
            (f(&lo, Round::Down), f(&hi, Round::Up))
        } else {
            (f(&hi, Round::Down), f(&lo, Round::Up))
        };
        Ball::from_endpoints(&a, &b, self.prec())
    }

    pub fn sqrt(&self) -> Result<Ball> {
        if !self.is_finite() || self.lower() < 0 {
            return Err(Error::InvalidBall("sqrt of a ball with a negative part".into()));
        }
        let p = self.prec();
        Ok(self.map_monotone(true, |x, r| Float::with_val_round(p, x.sqrt_ref(), r).0))
    }

    /// Square root of a quantity known to be non-negative; a negative part of
    /// the enclosure is discarded.
    pub fn sqrt_nonneg(&self) -> Result<Ball> {
        let zero = Float::new(self.prec());
        if self.upper() < zero {
            return Err(Error::InvalidBall("sqrt of a negative ball".into()));
        }
        if self.lower() >= zero {
            return self.sqrt();
        }
        let hi = Float::with_val_round(self.prec(), self.upper().sqrt_ref(), Round::Up).0;
        Ok(Ball::from_endpoints(&zero, &hi, self.prec()))
    }

    pub fn ln(&self) -> Result<Ball> {
        if !self.is_positive() {
            return Err(Error::InvalidBall("log of a ball touching zero".into()));
        }
        let p = self.prec();
        Ok(self.map_monotone(true, |x, r| Float::with_val_round(p, x.ln_ref(), r).0))
    }

    pub fn exp(&self) -> Ball {
        let p = self.prec();
        self.map_monotone(true, |x, r| Float::with_val_round(p, x.exp_ref(), r).0)
    }

    /// `self^e` for a positive base.
    pub fn pow(&self, e: &Ball) -> Result<Ball> {
        if !self.is_positive() {
            return Err(Error::InvalidBall("pow needs a positive base".into()));
        }
        Ok(self.ln()?.mul(e).exp())
    }

    pub fn atan(&self) -> Ball {
        let p = self.prec();
        self.map_monotone(true, |x, r| Float::with_val_round(p, x.atan_ref(), r).0)
    }

    pub fn sinh(&self) -> Ball {
        let p = self.prec();
        self.map_monotone(true, |x, r| Float::with_val_round(p, x.sinh_ref(), r).0)
    }

    pub fn cosh(&self) -> Ball {
        let p = self.prec();
        let f = |x: &Float, r| Float::with_val_round(p, x.cosh_ref(), r).0;
        if self.is_positive() {
            self.map_monotone(true, f)
        } else if self.is_negative() {
            self.map_monotone(false, f)
        } else {
            let m = max_float(self.lower().abs(), self.upper().abs());
            Ball::from_endpoints(&Float::with_val(p, 1), &f(&m, Round::Up), p)
        }
    }

    /// Lipschitz-1 enclosure around a correctly rounded midpoint value.
    fn map_lipschitz(&self, value: (Float, Ordering)) -> Ball {
        let (mid, ord) = value;
        let rad = self.rad.add(rounding_error(&mid, ord));
        Ball { mid, rad }
    }

    pub fn cos(&self) -> Ball {
        self.map_lipschitz(Float::with_val_round(self.prec(), self.mid.cos_ref(), Round::Nearest))
    }

    pub fn sin(&self) -> Ball {
        self.map_lipschitz(Float::with_val_round(self.prec(), self.mid.sin_ref(), Round::Nearest))
    }

    /// Arc cosine; the ball must meet `[-1, 1]` and is intersected with it.
    pub fn acos(&self) -> Result<Ball> {
        let p = self.prec();
        let u = self.clamp(&Float::with_val(p, -1), &Float::with_val(p, 1))?;
        Ok(u.map_monotone(false, |x, r| Float::with_val_round(p, x.acos_ref(), r).0))
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (f64::from(self.prec()) * std::f64::consts::LOG10_2) as usize;
        write!(f, "[{:.*} +/- {:.3e}]", digits.min(40), self.mid, self.rad.0)
    }
}

/// Rectangular complex enclosure `re + i·im`.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    re: Ball,
    im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> ComplexBall {
        ComplexBall { re, im }
    }

    pub fn from_real(re: Ball) -> ComplexBall {
        let im = Ball::zero(re.prec());
        ComplexBall { re, im }
    }

    pub fn re(&self) -> &Ball {
        &self.re
    }

    pub fn im(&self) -> &Ball {
        &self.im
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn contains_point(&self, re: &Float, im: &Float) -> bool {
        self.re.contains_point(re) && self.im.contains_point(im)
    }

    pub fn add(&self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.add(&rhs.re), self.im.add(&rhs.im))
    }

    pub fn sub(&self, rhs: &ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re.sub(&rhs.re), self.im.sub(&rhs.im))
    }

    pub fn neg(&self) -> ComplexBall {
        ComplexBall::new(self.re.neg(), self.im.neg())
    }

    pub fn conj(&self) -> ComplexBall {
        ComplexBall::new(self.re.clone(), self.im.neg())
    }

    pub fn mul(&self, rhs: &ComplexBall) -> ComplexBall {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        ComplexBall::new(re, im)
    }

    pub fn scale(&self, factor: &Ball) -> ComplexBall {
        ComplexBall::new(self.re.mul(factor), self.im.mul(factor))
    }

    pub fn add_real(&self, b: &Ball) -> ComplexBall {
        ComplexBall::new(self.re.add(b), self.im.clone())
    }

    pub fn norm_sqr(&self) -> Ball {
        self.re.sqr().add(&self.im.sqr())
    }

    /// Enclosure of `|z|`.
    pub fn abs(&self) -> Result<Ball> {
        self.norm_sqr().sqrt_nonneg()
    }

    pub fn div(&self, rhs: &ComplexBall) -> Result<ComplexBall> {
        let d = rhs.norm_sqr();
        if !d.is_positive() {
            return Err(Error::InvalidBall("complex division by a rectangle containing zero".into()));
        }
        let num = self.mul(&rhs.conj());
        Ok(ComplexBall::new(num.re.div(&d)?, num.im.div(&d)?))
    }

    pub fn exp(&self) -> ComplexBall {
        let m = self.re.exp();
        ComplexBall::new(m.mul(&self.im.cos()), m.mul(&self.im.sin()))
    }

    /// Principal argument; the rectangle must avoid `(-∞, 0]`.
    pub fn arg(&self) -> Result<Ball> {
        let p = self.prec();
        if self.re.is_positive() {
            return Ok(self.im.div(&self.re)?.atan());
        }
        if !self.im.excludes_zero() {
            return Err(Error::BranchCut);
        }
        let half_pi = Ball::pi(p).mul_2si(-1);
        let t = self.re.div(&self.im)?.atan();
        if self.im.is_positive() {
            Ok(half_pi.sub(&t))
        } else {
            Ok(half_pi.neg().sub(&t))
        }
    }

    /// Principal logarithm.
    pub fn ln(&self) -> Result<ComplexBall> {
        let arg = self.arg()?;
        let modulus = self.norm_sqr().ln()?.mul_2si(-1);
        Ok(ComplexBall::new(modulus, arg))
    }

    /// Principal power `z^e` for a real exponent.
    pub fn powr(&self, e: &Ball) -> Result<ComplexBall> {
        Ok(self.ln()?.scale(e).exp())
    }

    pub fn sqrt(&self) -> Result<ComplexBall> {
        Ok(self.ln()?.scale(&Ball::one(self.prec()).mul_2si(-1)).exp())
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

/// Operations shared by real and complex enclosures, so that series and
/// transfer operators can be evaluated on either.
pub trait Enclosure: Clone + Send + Sync + fmt::Debug {
    fn from_real(b: Ball) -> Self;
    fn prec(&self) -> u32;
    fn is_finite(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, factor: &Ball) -> Self;
    fn add_real(&self, b: &Ball) -> Self;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn ln(&self) -> Result<Self>;
    fn exp(&self) -> Self;
    fn sqrt(&self) -> Result<Self>;

    fn powr(&self, e: &Ball) -> Result<Self> {
        Ok(self.ln()?.scale(e).exp())
    }

    fn zero(prec: u32) -> Self {
        Self::from_real(Ball::zero(prec))
    }
}

impl Enclosure for Ball {
    fn from_real(b: Ball) -> Self {
        b
    }
    fn prec(&self) -> u32 {
        Ball::prec(self)
    }
    fn is_finite(&self) -> bool {
        Ball::is_finite(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        Ball::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Ball::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Ball::mul(self, rhs)
    }
    fn scale(&self, factor: &Ball) -> Self {
        Ball::mul(self, factor)
    }
    fn add_real(&self, b: &Ball) -> Self {
        Ball::add(self, b)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        Ball::div(self, rhs)
    }
    fn ln(&self) -> Result<Self> {
        Ball::ln(self)
    }
    fn exp(&self) -> Self {
        Ball::exp(self)
    }
    fn sqrt(&self) -> Result<Self> {
        Ball::sqrt(self)
    }
    fn powr(&self, e: &Ball) -> Result<Self> {
        Ball::pow(self, e)
    }
}

impl Enclosure for ComplexBall {
    fn from_real(b: Ball) -> Self {
        ComplexBall::from_real(b)
    }
    fn prec(&self) -> u32 {
        ComplexBall::prec(self)
    }
    fn is_finite(&self) -> bool {
        ComplexBall::is_finite(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        ComplexBall::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        ComplexBall::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        ComplexBall::mul(self, rhs)
    }
    fn scale(&self, factor: &Ball) -> Self {
        ComplexBall::scale(self, factor)
    }
    fn add_real(&self, b: &Ball) -> Self {
        ComplexBall::add_real(self, b)
    }
    fn div(&self, rhs: &Self) -> Result<Self> {
        ComplexBall::div(self, rhs)
    }
    fn ln(&self) -> Result<Self> {
        ComplexBall::ln(self)
    }
    fn exp(&self) -> Self {
        ComplexBall::exp(self)
    }
    fn sqrt(&self) -> Result<Self> {
        ComplexBall::sqrt(self)
    }
    fn powr(&self, e: &Ball) -> Result<Self> {
        ComplexBall::powr(self, e)
    }
}

/// Splits `[lo, hi]` into `k` equal closed pieces whose union covers it.
pub fn split_interval(lo: &Float, hi: &Float, k: usize, prec: u32) -> Vec<Ball> {
    let p = prec + 64;
    let width_down = Float::with_val_round(p, hi - lo, Round::Down).0;
    let width_up = Float::with_val_round(p, hi - lo, Round::Up).0;
    let point = |l: usize, width: &Float, round: Round| -> Float {
        let scaled = Float::with_val_round(p, width * l as u64, round).0;
        let step = Float::with_val_round(p, &scaled / k as u64, round).0;
        Float::with_val_round(p, lo + &step, round).0
    };
    (0..k)
        .map(|l| {
            let a = point(l, &width_down, Round::Down);
            let b = point(l + 1, &width_up, Round::Up);
            Ball::from_endpoints(&a, &b, prec)
        })
        .collect()
}

fn reduce_extremum<F>(pieces: &[Ball], phi: F, upper: bool) -> Result<Ball>
where
    F: Fn(&Ball) -> Result<Ball> + Sync,
{
    if pieces.is_empty() {
        return Err(Error::Parameter("need at least one subinterval".into()));
    }
    let ends: Vec<Result<Float>> = pieces
        .par_iter()
        .map(|x| {
            let y = phi(x)?;
            if !y.is_finite() {
                return Err(Error::InvalidBall("unbounded enclosure on a subinterval".into()));
            }
            Ok(if upper { y.upper() } else { y.lower() })
        })
        .collect();
    let mut best: Option<Float> = None;
    for end in ends {
        let end = end?;
        best = Some(match best {
            None => end,
            Some(b) if upper => max_float(b, end),
            Some(b) => {
                if end < b {
                    end
                } else {
                    b
                }
            }
        });
    }
    Ok(Ball::exact(best.expect("non-empty")))
}

/// Rigorous upper bound on `phi` over the union of `pieces`: the largest
/// upper endpoint of the piecewise enclosures.
pub fn sup_over<F>(pieces: &[Ball], phi: F) -> Result<Ball>
where
    F: Fn(&Ball) -> Result<Ball> + Sync,
{
    reduce_extremum(pieces, phi, true)
}

/// Rigorous lower bound on `phi` over the union of `pieces`.
pub fn inf_over<F>(pieces: &[Ball], phi: F) -> Result<Ball>
where
    F: Fn(&Ball) -> Result<Ball> + Sync,
{
    reduce_extremum(pieces, phi, false)
}

/// Upper bound for `sup phi` over `gamma([-1, 1])`, from `k` equal subintervals.
pub fn sup_ball<F>(phi: F, gamma: &ScaledInterval, k: usize, prec: u32) -> Result<Ball>
where
    F: Fn(&Ball) -> Result<Ball> + Sync,
{
    sup_over(&gamma.subintervals(k, prec), phi)
}

/// Lower bound for `inf phi` over `gamma([-1, 1])`, from `k` equal subintervals.
pub fn inf_ball<F>(phi: F, gamma: &ScaledInterval, k: usize, prec: u32) -> Result<Ball>
where
    F: Fn(&Ball) -> Result<Ball> + Sync,
{
    inf_over(&gamma.subintervals(k, prec), phi)
}
