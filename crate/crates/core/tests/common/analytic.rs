//! Interpolation error against the ellipse bound for analytic functions.

use ergodic_cert::ball::Enclosure;
use ergodic_cert::certify::interp_error_bound;
use ergodic_cert::cheb::{interpolate, CosTable};
use ergodic_cert::{Ball, ComplexBall, Result, ScaledInterval};
use rug::Float;

pub const NAMES: [&str; 5] = ["exp(x)", "1/(x+3)", "ln(x+2)", "sqrt(x+1)", "exp(-x^2)"];

/// All five are holomorphic on `γ(E_R)` for `R = 5.5` over `[0, 1]`;
/// `sqrt(x+1)` has its branch point just outside, at parameter `3 + √8`.
pub fn eval<E: Enclosure>(which: usize, x: &E) -> Result<E> {
    let p = x.prec();
    match which {
        0 => Ok(x.exp()),
        1 => E::from_real(Ball::one(p)).div(&x.add_real(&Ball::from_i64(3, p))),
        2 => x.add_real(&Ball::from_i64(2, p)).ln(),
        3 => x.add_real(&Ball::one(p)).sqrt(),
        _ => Ok(x.mul(x).scale(&Ball::from_i64(-1, p)).exp()),
    }
}

pub struct ErrorCheck {
    pub name: &'static str,
    pub n: usize,
    pub measured: f64,
    pub bound: Float,
}

pub const RHO: f64 = 1.001;
pub const BIG_R: f64 = 5.5;

/// Measured `max |f - P_n f|` on a uniform 1000-point grid of `[0, 1]`
/// against the ellipse bound, for each `n`.
pub fn error_checks(which: usize, ns: &[usize], prec: u32) -> Result<Vec<ErrorCheck>> {
    let gamma = ScaledInterval::unit_interval();
    let mut out = Vec::new();
    for &n in ns {
        let table = CosTable::new(n, prec);
        let values = (0..n)
            .map(|j| eval(which, &gamma.gamma(table.node(j))))
            .collect::<Result<Vec<Ball>>>()?;
        let p = interpolate(&values, &gamma)?;
        let mut measured = Float::new(prec);
        for i in 0..1000 {
            let x = Ball::ratio(i, 999, prec);
            let diff = p.eval_within(&x)?.sub(&eval(which, &x)?).abs();
            if *diff.mid() > measured {
                measured = diff.mid().clone();
            }
        }
        let bound = interp_error_bound(|z: &ComplexBall| eval(which, z), n, RHO, BIG_R, &gamma, 250, prec)?;
        out.push(ErrorCheck {
            name: NAMES[which],
            n,
            measured: measured.to_f64(),
            bound: bound.upper(),
        });
    }
    Ok(out)
}

/// `bound(n₂) / bound(n₁) ≤ (ρ/R)^{n₂-n₁}` for consecutive entries.
pub fn decays_fast_enough(checks: &[ErrorCheck]) -> bool {
    checks.windows(2).all(|w| {
        let p = w[0].bound.prec();
        let step = (w[1].n - w[0].n) as i32;
        let ratio = Ball::from_f64(RHO, p).div(&Ball::from_f64(BIG_R, p)).unwrap();
        let rate = ratio.pow(&Ball::from_i64(step as i64, p)).unwrap().upper();
        let allowed = Float::with_val(p, &w[0].bound * rate) * Float::with_val(p, 1.0 + 1e-12);
        w[1].bound <= allowed
    })
}
