//! Midpoint-radius balls over MPFR: every result encloses the exact value.

use ergodic_cert::ball::{sup_ball, Ball, ComplexBall};
use ergodic_cert::decimal::to_decimal;
use ergodic_cert::ScaledInterval;

fn main() -> ergodic_cert::Result<()> {
    let prec = 256;

    let third = Ball::ratio(1, 3, prec);
    let x = third.mul(&Ball::from_i64(3, prec));
    println!("3 · (1/3) = {x}");
    println!("  rendered down {}", to_decimal(&x.lower(), 70, false));
    println!("  rendered up   {}", to_decimal(&x.upper(), 70, true));

    let pi = Ball::pi(prec);
    let z = ComplexBall::new(Ball::zero(prec), pi).exp();
    println!("exp(iπ) = {} + {}i", z.re(), z.im());

    // sup of x(1-x) over [0, 1] in centered form: 1/4 + (x - 1/2)²·(-1)
    let quarter = Ball::ratio(1, 4, prec);
    let half = Ball::ratio(1, 2, prec);
    for k in [4, 16, 64] {
        let s = sup_ball(|x| Ok(quarter.sub(&x.sub(&half).sqr())), &ScaledInterval::unit_interval(), k, prec)?;
        println!("sup x(1-x), k = {k:>2}: ≤ {:.20}", s.upper().to_f64());
    }

    let bad = Ball::from_f64(-1.0, prec).ln();
    println!("ln(-1) -> {bad:?}");
    Ok(())
}
