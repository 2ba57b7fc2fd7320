//! Inverse branches and weighted transfer operators for the Bolyai-Rényi
//! family.
//!
//! The degree-`d` map `T(x) = (1 + x)^d - i` on `[0, 1]` has the inverse
//! branches `S_i(x) = (x + i)^{1/d} - 1` for `i = 1, …, 2^d - 1`; `d = 2`
//! is the classical map. Every operator here has the form
//!
//! ```text
//! (ℒf)(x) = Σ_i c_i · S_i'(x)^{s_i} · f(S_i x)
//! ```
//!
//! with a per-branch factor `c_i` and exponent `s_i`. Complex points use
//! principal-branch powers, which is the holomorphic extension of the real
//! weights.

use rayon::prelude::*;
use rug::Float;

use crate::ball::{Ball, ComplexBall, Enclosure};
use crate::cheb::{chebyshev_values_within, ChebSeries, ScaledInterval};
use crate::error::{Error, Result};

/// Largest supported degree; `2^d - 1` branches are created.
pub const MAX_DEGREE: u32 = 12;

/// `S(x) = (x + digit)^{1/degree} - 1`. Degree 1 with digit 1 is the
/// identity, which is handy as a test operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchSpec {
    digit: u32,
    degree: u32,
}

/// Values of one branch at a point, all derived from a shared `ln(x + i)`.
#[derive(Clone, Debug)]
pub struct BranchEval<E> {
    /// `S(x)`
    pub image: E,
    /// `S'(x)`
    pub deriv: E,
    /// `x + i`
    pub shifted: E,
    log_shifted: E,
}

impl BranchSpec {
    pub fn new(digit: u32, degree: u32) -> Result<BranchSpec> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Parameter(format!("degree {degree} outside 1..={MAX_DEGREE}")));
        }
        let count = (1u32 << degree) - 1;
        if digit == 0 || digit > count.max(1) {
            return Err(Error::Parameter(format!("digit {digit} outside 1..={}", count.max(1))));
        }
        Ok(BranchSpec { digit, degree })
    }

    pub fn digit(&self) -> u32 {
        self.digit
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    fn inv_degree(&self, prec: u32) -> Ball {
        Ball::ratio(1, i64::from(self.degree), prec)
    }

    /// Image, derivative and shifted argument at `x`.
    pub fn evaluate<E: Enclosure>(&self, x: &E) -> Result<BranchEval<E>> {
        let p = x.prec();
        let shifted = x.add_real(&Ball::from_i64(i64::from(self.digit), p));
        let log_shifted = shifted.ln()?;
        let one = Ball::one(p);
        let inv_d = self.inv_degree(p);
        // the square root is exact when representable, so S_3(1) = 1 exactly
        let root = match self.degree {
            1 => shifted.clone(),
            2 => shifted.sqrt()?,
            _ => log_shifted.scale(&inv_d).exp(),
        };
        let image = root.add_real(&one.neg());
        // S' = (1/d)(x+i)^{1/d - 1}
        let deriv = log_shifted.scale(&inv_d.sub(&one)).exp().scale(&inv_d);
        Ok(BranchEval {
            image,
            deriv,
            shifted,
            log_shifted,
        })
    }

    pub fn apply<E: Enclosure>(&self, x: &E) -> Result<E> {
        Ok(self.evaluate(x)?.image)
    }

    pub fn deriv<E: Enclosure>(&self, x: &E) -> Result<E> {
        Ok(self.evaluate(x)?.deriv)
    }

    /// `d/dx ln S'(x) = (1/d - 1)/(x + i)`.
    pub fn log_deriv_factor<E: Enclosure>(&self, x: &E) -> Result<E> {
        let p = x.prec();
        let shifted = x.add_real(&Ball::from_i64(i64::from(self.digit), p));
        let c = self.inv_degree(p).sub(&Ball::one(p));
        E::from_real(c).div(&shifted)
    }
}

/// `x ↦ (x + i)^{1/2} - 1` for `i = 1, 2, 3`.
pub fn bolyai_branch(i: u32) -> Result<BranchSpec> {
    if !(1..=3).contains(&i) {
        return Err(Error::Parameter(format!("digit {i} outside 1..=3")));
    }
    BranchSpec::new(i, 2)
}

/// One term `c · S'(x)^s · f(S x)` of an operator.
#[derive(Clone, Debug)]
pub struct WeightedBranch {
    pub branch: BranchSpec,
    pub exponent: Ball,
    pub factor: Ball,
}

impl WeightedBranch {
    /// `w(x) = c · (1/d)^s · (x + i)^{s(1/d - 1)}` from a branch evaluation.
    fn weight<E: Enclosure>(&self, at: &BranchEval<E>) -> E {
        let p = at.shifted.prec();
        let inv_d = self.branch.inv_degree(p);
        let power = self.exponent.mul(&inv_d.sub(&Ball::one(p)));
        let coef = self.factor.mul(&inv_d.ln().expect("positive").mul(&self.exponent).exp());
        at.log_shifted.scale(&power).exp().scale(&coef)
    }

    /// `w'(x) = s(1/d - 1) w(x)/(x + i)`.
    fn weight_deriv<E: Enclosure>(&self, at: &BranchEval<E>, w: &E) -> Result<E> {
        let p = w.prec();
        let power = self.exponent.mul(&self.branch.inv_degree(p).sub(&Ball::one(p)));
        w.scale(&power).div(&at.shifted)
    }
}

/// The operator families used by the pipelines.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorFamily {
    /// `ℒ_t`: branches 1..3, exponent `1 + t`.
    BolyaiFull { t: Float },
    /// `ℒ_0` with branch `digit` multiplied by `e^{-t}`; its log spectral
    /// radius has derivative `-μ(I_digit)` at 0.
    BolyaiDigit { digit: u32, t: Float },
    /// `M_t`: branches 1 and 3 only, exponent `t`.
    BolyaiDeleted { t: Float },
    /// Degree-`degree` map, `2^degree - 1` branches, exponent `1 + t`.
    Generalized { degree: u32, t: Float },
    /// The identity operator, `f ↦ f`.
    Identity,
}

impl OperatorFamily {
    pub fn bolyai_full(t: f64) -> OperatorFamily {
        OperatorFamily::BolyaiFull { t: exact(t) }
    }

    pub fn bolyai_digit(digit: u32, t: f64) -> OperatorFamily {
        OperatorFamily::BolyaiDigit { digit, t: exact(t) }
    }

    pub fn bolyai_deleted(t: f64) -> OperatorFamily {
        OperatorFamily::BolyaiDeleted { t: exact(t) }
    }

    pub fn generalized(degree: u32, t: f64) -> OperatorFamily {
        OperatorFamily::Generalized { degree, t: exact(t) }
    }

    /// Degree of the underlying map.
    pub fn degree(&self) -> u32 {
        match self {
            OperatorFamily::Generalized { degree, .. } => *degree,
            OperatorFamily::Identity => 1,
            _ => 2,
        }
    }

    /// The same family with the parameter replaced by `t`.
    pub fn with_t(&self, t: Float) -> OperatorFamily {
        match self {
            OperatorFamily::BolyaiFull { .. } => OperatorFamily::BolyaiFull { t },
            OperatorFamily::BolyaiDigit { digit, .. } => OperatorFamily::BolyaiDigit { digit: *digit, t },
            OperatorFamily::BolyaiDeleted { .. } => OperatorFamily::BolyaiDeleted { t },
            OperatorFamily::Generalized { degree, .. } => OperatorFamily::Generalized { degree: *degree, t },
            OperatorFamily::Identity => OperatorFamily::Identity,
        }
    }
}

fn exact(t: f64) -> Float {
    Float::with_val(53, t)
}

/// A weighted transfer operator acting on functions on `[0, 1]`.
#[derive(Clone, Debug)]
pub struct OperatorSpec {
    family: OperatorFamily,
    terms: Vec<WeightedBranch>,
}

pub fn make_operator(family: &OperatorFamily, prec: u32) -> Result<OperatorSpec> {
    let exact_ball = |t: &Float| Ball::exact(Float::with_val(prec.max(t.prec()), t));
    let term = |branch, exponent: Ball, factor: Ball| WeightedBranch {
        branch,
        exponent,
        factor,
    };
    let one = Ball::one(prec);
    let terms = match family {
        OperatorFamily::BolyaiFull { t } => {
            let s = one.add(&exact_ball(t));
            (1..=3)
                .map(|i| Ok(term(bolyai_branch(i)?, s.clone(), one.clone())))
                .collect::<Result<Vec<_>>>()?
        }
        OperatorFamily::BolyaiDigit { digit, t } => {
            bolyai_branch(*digit)?;
            let boost = exact_ball(t).neg().exp();
            (1..=3)
                .map(|i| {
                    let factor = if i == *digit { boost.clone() } else { one.clone() };
                    Ok(term(bolyai_branch(i)?, one.clone(), factor))
                })
                .collect::<Result<Vec<_>>>()?
        }
        OperatorFamily::BolyaiDeleted { t } => [1, 3]
            .into_iter()
            .map(|i| Ok(term(bolyai_branch(i)?, exact_ball(t), one.clone())))
            .collect::<Result<Vec<_>>>()?,
        OperatorFamily::Generalized { degree, t } => {
            if *degree < 2 || *degree > MAX_DEGREE {
                return Err(Error::Parameter(format!("degree must be in 2..={MAX_DEGREE}, got {degree}")));
            }
            let s = one.add(&exact_ball(t));
            (1..(1u32 << degree))
                .map(|i| Ok(term(BranchSpec::new(i, *degree)?, s.clone(), one.clone())))
                .collect::<Result<Vec<_>>>()?
        }
        OperatorFamily::Identity => vec![term(BranchSpec::new(1, 1)?, one.clone(), one.clone())],
    };
    if let Some(bad) = terms.iter().find(|w| !w.exponent.is_finite()) {
        return Err(Error::Parameter(format!("exponent {} is not finite", bad.exponent)));
    }
    Ok(OperatorSpec {
        family: family.clone(),
        terms,
    })
}

/// Enclosures on which a Chebyshev series can be evaluated inside an
/// operator: real points use the interval-aware evaluation, complex points
/// use Clenshaw.
pub trait Point: Enclosure {
    fn series(s: &ChebSeries, x: &Self) -> Result<Self>;
    fn series_pair(s: &ChebSeries, ds: &ChebSeries, x: &Self) -> Result<(Self, Self)>;
    /// Restricts a real argument to `[0, 1]`; complex points pass through.
    fn restrict(x: &Self) -> Result<Self>;
}

impl Point for Ball {
    fn series(s: &ChebSeries, x: &Ball) -> Result<Ball> {
        s.eval_within(x)
    }
    fn series_pair(s: &ChebSeries, ds: &ChebSeries, x: &Ball) -> Result<(Ball, Ball)> {
        s.eval_pair_within(ds, x)
    }
    fn restrict(x: &Ball) -> Result<Ball> {
        let p = x.prec();
        x.clamp(&Float::with_val(p, 0), &Float::with_val(p, 1))
    }
}

impl Point for ComplexBall {
    fn series(s: &ChebSeries, x: &ComplexBall) -> Result<ComplexBall> {
        s.eval_complex(x)
    }
    fn series_pair(s: &ChebSeries, ds: &ChebSeries, x: &ComplexBall) -> Result<(ComplexBall, ComplexBall)> {
        Ok((s.eval_complex(x)?, ds.eval_complex(x)?))
    }
    fn restrict(x: &ComplexBall) -> Result<ComplexBall> {
        Ok(x.clone())
    }
}

/// `S(x)` for a single branch.
pub fn branch_apply<E: Enclosure>(b: &BranchSpec, x: &E) -> Result<E> {
    b.apply(x)
}

impl OperatorSpec {
    pub fn family(&self) -> &OperatorFamily {
        &self.family
    }

    pub fn terms(&self) -> &[WeightedBranch] {
        &self.terms
    }

    pub fn branches(&self) -> Vec<BranchSpec> {
        self.terms.iter().map(|w| w.branch).collect()
    }

    /// Common exponent when all branches share one.
    pub fn exponent(&self) -> Option<&Ball> {
        let first = &self.terms[0].exponent;
        self.terms
            .iter()
            .all(|w| w.exponent.mid() == first.mid() && w.exponent.rad() == first.rad())
            .then_some(first)
    }

    pub fn degree(&self) -> u32 {
        self.family.degree()
    }

    /// Weights `w_i(x)` and branch images `S_i(x)`.
    pub fn weights_and_images<E: Point>(&self, x: &E) -> Result<Vec<(E, E)>> {
        let x = E::restrict(x)?;
        self.terms
            .iter()
            .map(|term| {
                let at = term.branch.evaluate(&x)?;
                let w = term.weight(&at);
                Ok((w, at.image))
            })
            .collect()
    }

    /// `(ℒf)(x)`. Real points are restricted to `[0, 1]`.
    pub fn apply<E: Point>(&self, f: &ChebSeries, x: &E) -> Result<E> {
        let mut acc = E::zero(x.prec());
        for (w, y) in self.weights_and_images(x)? {
            acc = acc.add(&w.mul(&E::series(f, &y)?));
        }
        Ok(acc)
    }

    /// `(ℒf)(x)` and `(ℒf)'(x)`, given `df = f'`.
    pub fn apply_pair<E: Point>(&self, f: &ChebSeries, df: &ChebSeries, x: &E) -> Result<(E, E)> {
        let x = E::restrict(x)?;
        let p = x.prec();
        let mut value = E::zero(p);
        let mut slope = E::zero(p);
        for term in &self.terms {
            let at = term.branch.evaluate(&x)?;
            let w = term.weight(&at);
            let dw = term.weight_deriv(&at, &w)?;
            let (fy, dfy) = E::series_pair(f, df, &at.image)?;
            value = value.add(&w.mul(&fy));
            slope = slope.add(&dw.mul(&fy)).add(&w.mul(&at.deriv).mul(&dfy));
        }
        Ok((value, slope))
    }

    /// `(ℒf)'(x)` alone.
    pub fn apply_deriv<E: Point>(&self, f: &ChebSeries, df: &ChebSeries, x: &E) -> Result<E> {
        Ok(self.apply_pair(f, df, x)?.1)
    }

    /// `(ℒ ê_l)(x)` for `l < rank` at a real point, sharing basis work.
    pub fn basis_images(&self, x: &Ball, gamma: &ScaledInterval, rank: usize) -> Result<Vec<Ball>> {
        let p = x.prec();
        let mut acc = vec![Ball::zero(p); rank];
        for (w, y) in self.weights_and_images(x)? {
            let u = gamma.gamma_inv(&y)?;
            for (a, t) in acc.iter_mut().zip(chebyshev_values_within(&u, rank)?) {
                *a = a.add(&w.mul(&t));
            }
        }
        Ok(acc)
    }

    /// `(ℒf)(x_j)` at many real points in parallel.
    pub fn apply_many(&self, f: &ChebSeries, xs: &[Ball]) -> Result<Vec<Ball>> {
        xs.par_iter().map(|x| self.apply(f, x)).collect()
    }
}

/// `(ℒf)(x)`.
pub fn operator_apply<E: Point>(op: &OperatorSpec, f: &ChebSeries, x: &E) -> Result<E> {
    op.apply(f, x)
}

/// `(ℒf)'(x)`, given `df = f'`.
pub fn operator_deriv_apply<E: Point>(op: &OperatorSpec, f: &ChebSeries, df: &ChebSeries, x: &E) -> Result<E> {
    op.apply_deriv(f, df, x)
}

/// `ln T'(x) = ln d + (d - 1) ln(1 + x)`, the same on every branch of the
/// degree-`d` map.
pub fn log_expansion(degree: u32, x: &Ball) -> Result<Ball> {
    let p = x.prec();
    let d = Ball::from_i64(i64::from(degree), p);
    let tail = x.add(&Ball::one(p)).ln()?.mul(&Ball::from_i64(i64::from(degree) - 1, p));
    Ok(d.ln()?.add(&tail))
}
