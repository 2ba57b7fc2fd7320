//! Lagrange-Chebyshev interpolation on [0, 1] and the ellipse error bound.

use ergodic_cert::ball::Enclosure;
use ergodic_cert::certify::interp_error_bound;
use ergodic_cert::cheb::{cheb_nodes, interpolate};
use ergodic_cert::{Ball, ComplexBall, ScaledInterval};

fn f<E: Enclosure>(x: &E) -> ergodic_cert::Result<E> {
    // holomorphic up to the branch point x = -1
    x.add_real(&Ball::one(x.prec())).sqrt()
}

fn main() -> ergodic_cert::Result<()> {
    let prec = 256;
    let gamma = ScaledInterval::unit_interval();
    println!("{:>4} {:>12} {:>12}", "n", "|f - P_n f|", "bound");
    for n in [8, 16, 32, 64] {
        let values = cheb_nodes(n, &gamma, prec).iter().map(f).collect::<ergodic_cert::Result<Vec<Ball>>>()?;
        let p = interpolate(&values, &gamma)?;
        let mut err = 0f64;
        for i in 0..=500 {
            let x = Ball::ratio(i, 500, prec);
            err = err.max(p.eval_within(&x)?.sub(&f(&x)?).abs().to_f64());
        }
        let bound = interp_error_bound(|z: &ComplexBall| f(z), n, 1.001, 5.5, &gamma, 250, prec)?;
        println!("{n:>4} {err:>12.3e} {:>12.3e}", bound.to_f64());
    }

    let p = interpolate(&cheb_nodes(40, &gamma, prec).iter().map(f).collect::<ergodic_cert::Result<Vec<_>>>()?, &gamma)?;
    let x = Ball::ratio(1, 3, prec);
    println!("P f(1/3)  = {}", p.eval_within(&x)?);
    println!("P f'(1/3) = {} (exact 1/(2·sqrt(4/3)) ≈ {:.15})", p.derivative().eval_within(&x)?, 0.5 / (4f64 / 3.0).sqrt());
    Ok(())
}
