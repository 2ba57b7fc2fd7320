//! Certified bounds on inf and sup of ℒf/f for the power-method
//! eigenfunction, hence on the leading eigenvalue.

use ergodic_cert::{compute_bounds, make_operator, OperatorFamily, PrecisionConfig, ScaledInterval};

fn main() -> ergodic_cert::Result<()> {
    let cfg = PrecisionConfig { m: 40, ..PrecisionConfig::desk() };
    for t in [0.0, 1e-20, -1e-20] {
        let op = make_operator(&OperatorFamily::bolyai_full(t), cfg.prec)?;
        let r = compute_bounds(&op, &cfg, &ScaledInterval::unit_interval())?;
        println!("t = {t:e}");
        println!("  lower        {:.40}", r.bounds.lo());
        println!("  upper        {:.40}", r.bounds.hi());
        println!("  inf f        {:.6}", r.f_min.lower().to_f64());
        println!("  sup|P_n ψ|   {:.3e}", r.projection_sup.to_f64());
        println!("  error term   {:.3e}", r.projection_error.to_f64());
        println!("  power steps  {}", r.power_iterations);
    }
    Ok(())
}
