//! Chebyshev series on scaled intervals and the Lagrange-Chebyshev projector.
//!
//! A [`ChebSeries`] on `γ(u) = r·u + c` stands for
//! `x ↦ Σ_l a_l T_l(γ⁻¹(x))`. Interpolation uses the first-kind nodes
//! `cos((2j+1)π/(2n))` and the direct `O(n²)` coefficient sums.

use rayon::prelude::*;
use rug::float::Round;
use rug::Float;

use crate::ball::{split_interval, Ball, ComplexBall, Enclosure, Mag};
use crate::error::{Error, Result};

/// The affine map `γ(u) = r·u + c` from `[-1, 1]` onto `[c - r, c + r]`.
#[derive(Clone, Debug)]
pub struct ScaledInterval {
    c: Float,
    r: Float,
}

impl ScaledInterval {
    pub fn new(c: Float, r: Float) -> Result<ScaledInterval> {
        if !c.is_finite() || !r.is_finite() || r <= 0 {
            return Err(Error::Parameter("scaled interval needs finite c and r > 0".into()));
        }
        Ok(ScaledInterval { c, r })
    }

    /// `[lo, hi]` for finite `lo < hi`; the representation is exact.
    pub fn from_endpoints(lo: f64, hi: f64) -> Result<ScaledInterval> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Parameter(format!("bad interval [{lo}, {hi}]")));
        }
        let (lo, hi) = (Float::with_val(53, lo), Float::with_val(53, hi));
        let mut c = Float::with_val(2200, &lo + &hi);
        c >>= 1;
        let mut r = Float::with_val(2200, &hi - &lo);
        r >>= 1;
        ScaledInterval::new(c, r)
    }

    /// `[0, 1]`, the phase space of every map in the crate.
    pub fn unit_interval() -> ScaledInterval {
        ScaledInterval {
            c: Float::with_val(64, 0.5),
            r: Float::with_val(64, 0.5),
        }
    }

    /// `[-1, 1]` with `γ` the identity.
    pub fn identity() -> ScaledInterval {
        ScaledInterval {
            c: Float::with_val(64, 0),
            r: Float::with_val(64, 1),
        }
    }

    pub fn center(&self) -> &Float {
        &self.c
    }

    pub fn radius(&self) -> &Float {
        &self.r
    }

    pub fn center_ball(&self, prec: u32) -> Ball {
        Ball::from_endpoints(
            &Float::with_val_round(prec, &self.c, Round::Down).0,
            &Float::with_val_round(prec, &self.c, Round::Up).0,
            prec,
        )
    }

    pub fn radius_ball(&self, prec: u32) -> Ball {
        Ball::from_endpoints(
            &Float::with_val_round(prec, &self.r, Round::Down).0,
            &Float::with_val_round(prec, &self.r, Round::Up).0,
            prec,
        )
    }

    fn work_prec(&self) -> u32 {
        self.c.prec().max(self.r.prec()) + 64
    }

    /// Lower endpoint `c - r`, rounded down.
    pub fn lower(&self) -> Float {
        Float::with_val_round(self.work_prec(), &self.c - &self.r, Round::Down).0
    }

    /// Upper endpoint `c + r`, rounded up.
    pub fn upper(&self) -> Float {
        Float::with_val_round(self.work_prec(), &self.c + &self.r, Round::Up).0
    }

    pub fn gamma<E: Enclosure>(&self, u: &E) -> E {
        let p = u.prec();
        u.scale(&self.radius_ball(p)).add_real(&self.center_ball(p))
    }

    pub fn gamma_inv<E: Enclosure>(&self, x: &E) -> Result<E> {
        let p = x.prec();
        let inv_r = self.radius_ball(p).recip()?;
        Ok(x.add_real(&self.center_ball(p).neg()).scale(&inv_r))
    }

    /// Whether `x` certainly lies inside `[c - r, c + r]`.
    pub fn contains(&self, x: &Ball) -> bool {
        x.is_finite() && x.lower() >= self.lower() && x.upper() <= self.upper()
    }

    /// `k` closed pieces covering the interval.
    pub fn subintervals(&self, k: usize, prec: u32) -> Vec<Ball> {
        split_interval(&self.lower(), &self.upper(), k, prec)
    }
}

/// Values `cos(πq/(2n))` for `q` in `[0, 4n)`.
///
/// Both the nodes and the basis values at them are table lookups:
/// `x_j = cos((2j+1)π/(2n))` and `T_k(x_j) = cos(k(2j+1)π/(2n))`.
#[derive(Clone, Debug)]
pub struct CosTable {
    n: usize,
    values: Vec<Ball>,
}

impl CosTable {
    pub fn new(n: usize, prec: u32) -> CosTable {
        assert!(n >= 1, "node count must be positive");
        let pi = Ball::pi(prec + 32);
        // first quadrant, including the endpoints
        let quadrant: Vec<Ball> = (0..=n)
            .into_par_iter()
            .map(|q| {
                if q == 0 {
                    return Ball::one(prec);
                }
                if q == n {
                    return Ball::zero(prec);
                }
                let angle = pi.mul(&Ball::ratio(q as i64, 2 * n as i64, prec + 32));
                let v = angle.cos();
                Ball::from_endpoints(&v.lower(), &v.upper(), prec)
            })
            .collect();
        let mut values = Vec::with_capacity(4 * n);
        for q in 0..4 * n {
            let v = if q <= n {
                quadrant[q].clone()
            } else if q <= 2 * n {
                quadrant[2 * n - q].neg()
            } else if q <= 3 * n {
                quadrant[q - 2 * n].neg()
            } else {
                quadrant[4 * n - q].clone()
            };
            values.push(v);
        }
        CosTable { n, values }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, q: usize) -> &Ball {
        &self.values[q % (4 * self.n)]
    }

    /// The node `x_j` on `[-1, 1]`.
    pub fn node(&self, j: usize) -> &Ball {
        self.get(2 * j + 1)
    }

    /// `T_k(x_j)`.
    pub fn basis(&self, k: usize, j: usize) -> &Ball {
        self.get(k * (2 * j + 1))
    }
}

/// The `m` Chebyshev nodes mapped by `gamma`.
pub fn cheb_nodes(m: usize, gamma: &ScaledInterval, prec: u32) -> Vec<Ball> {
    let table = CosTable::new(m, prec);
    (0..m).map(|j| gamma.gamma(table.node(j))).collect()
}

/// Lagrange-Chebyshev interpolation of `values` sampled at the nodes.
pub fn interpolate(values: &[Ball], gamma: &ScaledInterval) -> Result<ChebSeries> {
    if values.is_empty() {
        return Err(Error::Parameter("cannot interpolate zero samples".into()));
    }
    let prec = values.iter().map(Ball::prec).max().unwrap_or(64);
    interpolate_with(&CosTable::new(values.len(), prec), values, gamma)
}

/// As [`interpolate`], reusing a node table of matching size.
pub fn interpolate_with(table: &CosTable, values: &[Ball], gamma: &ScaledInterval) -> Result<ChebSeries> {
    let m = values.len();
    if m == 0 || table.len() != m {
        return Err(Error::Parameter(format!(
            "node table of size {} does not match {m} samples",
            table.len()
        )));
    }
    let prec = values.iter().map(Ball::prec).max().unwrap_or(64);
    let coeffs = (0..m)
        .into_par_iter()
        .map(|k| {
            let mut acc = Ball::zero(prec);
            for (j, v) in values.iter().enumerate() {
                acc = acc.add(&v.mul(table.basis(k, j)));
            }
            let weight = Ball::ratio(if k == 0 { 1 } else { 2 }, m as i64, prec);
            acc.mul(&weight)
        })
        .collect();
    ChebSeries::new(gamma.clone(), coeffs)
}

/// `T_0(u), …, T_{count-1}(u)` over `u ∩ [-1, 1]`.
///
/// Uses `T_k(cos θ) = cos(kθ)`, so radii grow linearly in `k` instead of
/// geometrically as with the three-term recurrence. Near `±1`, where `acos`
/// turns a radius `r` into about `√(2r)`, the Markov bound `|T_k'| ≤ k²`
/// around the exact midpoint is used instead when it is tighter.
pub fn chebyshev_values_within(u: &Ball, count: usize) -> Result<Vec<Ball>> {
    let p = u.prec();
    let (minus_one, one) = (Float::with_val(p, -1), Float::with_val(p, 1));
    let u = u.clamp(&minus_one, &one)?;
    let theta = u.acos()?;
    let steep = theta.rad().get() > 2.0 * u.rad().get();
    let theta_mid = if steep { Some(Ball::exact(u.mid().clone()).acos()?) } else { None };
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        out.push(match k {
            0 => Ball::one(p),
            1 => u.clone(),
            _ => {
                let kb = Ball::from_i64(k as i64, p);
                let by_angle = theta.mul(&kb).cos().clamp(&minus_one, &one)?;
                match &theta_mid {
                    Some(tm) => {
                        let markov = Mag::new((k * k) as f64).mul(u.rad());
                        let by_slope = widen(&tm.mul(&kb).cos(), markov).clamp(&minus_one, &one)?;
                        if by_slope.rad() < by_angle.rad() {
                            by_slope
                        } else {
                            by_angle
                        }
                    }
                    None => by_angle,
                }
            }
        });
    }
    Ok(out)
}

fn dot(coeffs: &[Ball], basis: &[Ball]) -> Ball {
    let mut acc = Ball::zero(coeffs[0].prec());
    for (c, t) in coeffs.iter().zip(basis) {
        acc = acc.add(&c.mul(t));
    }
    acc
}

/// A finite Chebyshev expansion on a scaled interval.
#[derive(Clone, Debug)]
pub struct ChebSeries {
    gamma: ScaledInterval,
    coeffs: Vec<Ball>,
}

impl ChebSeries {
    pub fn new(gamma: ScaledInterval, coeffs: Vec<Ball>) -> Result<ChebSeries> {
        if coeffs.is_empty() {
            return Err(Error::Parameter("series needs at least one coefficient".into()));
        }
        if let Some(l) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidBall(format!("coefficient {l} is not finite")));
        }
        Ok(ChebSeries { gamma, coeffs })
    }

    pub fn constant(value: Ball, gamma: ScaledInterval) -> ChebSeries {
        ChebSeries {
            gamma,
            coeffs: vec![value],
        }
    }

    /// The basis element `ê_l = T_l ∘ γ⁻¹`.
    pub fn basis(l: usize, gamma: ScaledInterval, prec: u32) -> ChebSeries {
        let mut coeffs = vec![Ball::zero(prec); l + 1];
        coeffs[l] = Ball::one(prec);
        ChebSeries { gamma, coeffs }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Ball] {
        &self.coeffs
    }

    pub fn gamma(&self) -> &ScaledInterval {
        &self.gamma
    }

    pub fn prec(&self) -> u32 {
        self.coeffs.iter().map(Ball::prec).max().unwrap_or(64)
    }

    /// Clenshaw evaluation at any real or complex enclosure.
    pub fn eval<E: Enclosure>(&self, x: &E) -> Result<E> {
        let u = self.gamma.gamma_inv(x)?;
        Ok(self.clenshaw(&u))
    }

    fn clenshaw<E: Enclosure>(&self, u: &E) -> E {
        let p = self.prec().max(u.prec());
        let two = Ball::from_i64(2, p);
        let two_u = u.scale(&two);
        let mut b1 = E::zero(p);
        let mut b2 = E::zero(p);
        for c in self.coeffs[1..].iter().rev() {
            let b0 = two_u.mul(&b1).sub(&b2).add_real(c);
            b2 = b1;
            b1 = b0;
        }
        u.mul(&b1).sub(&b2).add_real(&self.coeffs[0])
    }

    /// Enclosure of the series over `x ∩ [c - r, c + r]`.
    ///
    /// Much tighter than [`ChebSeries::eval`] on the interval at high rank.
    /// Errors if `x` misses the interval.
    pub fn eval_within(&self, x: &Ball) -> Result<Ball> {
        let u = self.gamma.gamma_inv(x)?;
        let basis = chebyshev_values_within(&u, self.rank())?;
        Ok(dot(&self.coeffs, &basis))
    }

    /// Values of `self` and `deriv` (normally `self.derivative()`) over
    /// `x ∩ [c - r, c + r]`, sharing the basis values.
    pub fn eval_pair_within(&self, deriv: &ChebSeries, x: &Ball) -> Result<(Ball, Ball)> {
        let u = self.gamma.gamma_inv(x)?;
        let basis = chebyshev_values_within(&u, self.rank().max(deriv.rank()))?;
        Ok((dot(&self.coeffs, &basis), dot(&deriv.coeffs, &basis)))
    }

    /// Real evaluation: [`ChebSeries::eval_within`] when `x` lies certainly
    /// inside the interval, Clenshaw otherwise.
    pub fn eval_real(&self, x: &Ball) -> Result<Ball> {
        if self.gamma.contains(x) {
            self.eval_within(x)
        } else {
            self.eval(x)
        }
    }

    /// Complex evaluation in centered form: Clenshaw at the midpoint plus
    /// `|u - u₀| · Σ |a_l| l U_{l-1}(a)`, where the ball lies inside the
    /// filled Bernstein ellipse `|u-1| + |u+1| ≤ 2a`. On that ellipse
    /// `|T_l'| ≤ l U_{l-1}(a)`, so the radius grows with the true size of
    /// the derivative instead of compounding through the recurrence.
    pub fn eval_complex(&self, z: &ComplexBall) -> Result<ComplexBall> {
        let p = self.prec().max(z.prec());
        let u = self.gamma.gamma_inv(z)?;
        let spread = u.re().rad().add(u.im().rad());
        let center = ComplexBall::new(Ball::exact(u.re().mid().clone()), Ball::exact(u.im().mid().clone()));
        let value = self.clenshaw(&center);
        if spread.is_zero() || self.rank() == 1 {
            return Ok(value);
        }
        if !spread.is_finite() {
            return Err(Error::InvalidBall("unbounded series argument".into()));
        }
        let one = Ball::one(p);
        let foci = center.add_real(&one.neg()).abs()?.add(&center.add_real(&one).abs()?);
        let a = foci.mul_2si(-1).add(&Ball::exact(spread.to_float()));
        let a = Ball::exact(max_float(a.upper(), Float::with_val(p, 1)));
        let two_a = a.mul_2si(1);
        // U_0 = 1, U_1 = 2a, U_k = 2a U_{k-1} - U_{k-2}
        let (mut u_prev, mut u_cur) = (Ball::zero(p), Ball::one(p));
        let mut lip = Ball::zero(p);
        for (l, c) in self.coeffs.iter().enumerate().skip(1) {
            let weight = Ball::exact(c.abs().upper()).mul(&Ball::from_i64(l as i64, p));
            lip = lip.add(&weight.mul(&u_cur));
            let next = two_a.mul(&u_cur).sub(&u_prev);
            u_prev = u_cur;
            u_cur = next;
        }
        let grow = spread.mul(Mag::of(&lip.upper()));
        if !grow.is_finite() {
            return Err(Error::InvalidBall("series spread overflow".into()));
        }
        Ok(ComplexBall::new(widen(value.re(), grow), widen(value.im(), grow)))
    }

    /// The series of `d/dx`, including the `1/r` factor from `γ⁻¹`.
    pub fn derivative(&self) -> ChebSeries {
        let p = self.prec();
        let n = self.rank();
        if n == 1 {
            return ChebSeries::constant(Ball::zero(p), self.gamma.clone());
        }
        // d_{k-1} = d_{k+1} + 2k a_k, then halve d_0.
        let mut d = vec![Ball::zero(p); n + 1];
        for k in (1..n).rev() {
            let term = self.coeffs[k].mul(&Ball::from_i64(2 * k as i64, p));
            d[k - 1] = d[k + 1].add(&term);
        }
        d[0] = d[0].mul_2si(-1);
        d.truncate(n - 1);
        let inv_r = self.gamma.radius_ball(p).recip().expect("positive radius");
        let coeffs = d.iter().map(|c| c.mul(&inv_r)).collect();
        ChebSeries {
            gamma: self.gamma.clone(),
            coeffs,
        }
    }

    /// Samples at the nodes of `table`, mapped by this series' interval.
    pub fn sample_nodes(&self, table: &CosTable) -> Result<Vec<Ball>> {
        (0..table.len())
            .into_par_iter()
            .map(|j| self.eval_within(&self.gamma.gamma(table.node(j))))
            .collect()
    }
}

fn widen(b: &Ball, extra: Mag) -> Ball {
    Ball::new(b.mid().clone(), b.rad().add(extra))
}

fn max_float(a: Float, b: Float) -> Float {
    if a >= b {
        a
    } else {
        b
    }
}
