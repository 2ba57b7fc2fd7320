//! The transfer operator ℒ_t and its finite-rank matrix; the leading
//! eigenvalue is e^{P(t)}, so the pressure crosses zero at t = 0.

use ergodic_cert::certify::{compute_matrix, power_method};
use ergodic_cert::cheb::ChebSeries;
use ergodic_cert::{make_operator, Ball, OperatorFamily, ScaledInterval};

fn main() -> ergodic_cert::Result<()> {
    let prec = 192;
    let gamma = ScaledInterval::unit_interval();

    let op = make_operator(&OperatorFamily::bolyai_full(0.0), prec)?;
    let one = ChebSeries::constant(Ball::one(prec), gamma.clone());
    for x in [0.0, 0.5, 1.0] {
        println!("(ℒ_0 1)({x}) = {}", op.apply(&one, &Ball::from_f64(x, prec))?.to_f64());
    }

    println!("{:>6} {:>22} {:>10}", "t", "P(t) ≈ log λ", "iters");
    for t in [-0.5, -0.1, 0.0, 0.1, 0.5, 1.0] {
        let op = make_operator(&OperatorFamily::bolyai_full(t), prec)?;
        let eig = power_method(&compute_matrix(&op, 40, &gamma, prec)?)?;
        println!("{t:>6} {:>22.15} {:>10}", eig.value.to_f64().ln(), eig.iterations);
    }
    Ok(())
}
